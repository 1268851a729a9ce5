#include "pca.hpp"

#include <algorithm>

#include "errors.hpp"
#include "linalg.hpp"

namespace spca {

FactorModel fit_pca(const Matrix& x, std::size_t ncomp) {
  if (ncomp < 1 || ncomp > std::min(x.rows(), x.cols()))
    throw ShapeError("fit_pca: component count out of range");
  SvdResult d = svd(x);
  FactorModel m;
  m.method = Method::kPca;
  m.deflation = Deflation::kNone;
  m.P = d.V.head_cols(ncomp);
  m.T = x * m.P;
  return m;
}

}  // namespace spca
