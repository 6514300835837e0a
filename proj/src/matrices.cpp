#include "loewner/matrices.hpp"

namespace loewner {

const char* kind_name(MatrixKind k) {
  switch (k) {
    case MatrixKind::Loewner:
      return "loewner";
    case MatrixKind::Kraus:
      return "kraus";
    case MatrixKind::Dobsch:
      return "dobsch";
    case MatrixKind::Hansen:
      return "hansen";
    case MatrixKind::Cauchy:
      return "cauchy";
    case MatrixKind::IndexSum:
      return "index_sum";
    case MatrixKind::Derived:
      return "derived";
  }
  return "?";
}

}  // namespace loewner
