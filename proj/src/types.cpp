#include "blda/types.hpp"

namespace blda {

std::string to_string(Method m) {
    switch (m) {
        case Method::Pca: return "pca";
        case Method::Lda: return "lda";
        case Method::L2blda: return "l2blda";
        case Method::L1blda: return "l1blda";
    }
    return "?";
}

std::optional<Method> method_from_string(std::string_view s) {
    if (s == "pca") return Method::Pca;
    if (s == "lda") return Method::Lda;
    if (s == "l2blda") return Method::L2blda;
    if (s == "l1blda") return Method::L1blda;
    return std::nullopt;
}

double ProjectionMatrix::orthonormality_error() const {
    const Index d = w.cols();
    return (w.transpose() * w - Matrix::Identity(d, d)).norm();
}

}  // namespace blda
