#pragma once

#include <string>
#include <vector>

#include "matrix.hpp"

namespace spca {

// CSV with one header row of column names, comma separator, 17
// significant digits so save/load round-trips bit-exactly.
Matrix load_matrix_csv(const std::string& path);
void save_matrix_csv(const Matrix& m, const std::string& path,
                     const std::vector<std::string>& col_names = {});

std::string format_full(double v);  // %.17g

}  // namespace spca
