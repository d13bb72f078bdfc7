#include "kwflow/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace kwflow {

static_assert(std::endian::native == std::endian::little,
              "KWF1 writer assumes a little-endian host");

void write_kwf1(const std::filesystem::path& path, const ScalarField& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << "KWF1 " << f.n() << " " << f.n() << "\n";
  out.write(reinterpret_cast<const char*>(f.data()),
            static_cast<std::streamsize>(f.size() * sizeof(double)));
  if (!out) throw Error("short write to " + path.string());
}

ScalarField read_kwf1(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::string magic;
  int n1 = 0, n2 = 0;
  in >> magic >> n1 >> n2;
  if (magic != "KWF1" || n1 != n2) throw Error(path.string() + ": not a KWF1 field file");
  in.get();  // the newline terminating the header
  Grid g = Grid::make(n1);
  ScalarField f(g);
  in.read(reinterpret_cast<char*>(f.data()),
          static_cast<std::streamsize>(f.size() * sizeof(double)));
  if (in.gcount() != static_cast<std::streamsize>(f.size() * sizeof(double)))
    throw Error(path.string() + ": truncated KWF1 payload");
  return f;
}

void write_series_csv(const std::filesystem::path& path, const std::vector<Diagnostics>& series) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << Diagnostics::csv_header() << "\n";
  for (const auto& d : series) out << d.csv_row() << "\n";
}

}  // namespace kwflow
