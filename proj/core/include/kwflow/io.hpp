#ifndef KWFLOW_IO_HPP
#define KWFLOW_IO_HPP

#include <filesystem>
#include <vector>

#include "kwflow/field.hpp"
#include "kwflow/functionals.hpp"

namespace kwflow {

/**
 * KWF1 field file: ASCII header "KWF1 <n> <n>\n" followed by n*n
 * little-endian 64-bit IEEE-754 reals, row-major.
 */
void write_kwf1(const std::filesystem::path& path, const ScalarField& f);
ScalarField read_kwf1(const std::filesystem::path& path);

void write_series_csv(const std::filesystem::path& path, const std::vector<Diagnostics>& series);

}  // namespace kwflow

#endif
