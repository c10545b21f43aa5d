#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace blda {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Dimensionality-reduction methods provided by this library.
enum class Method { Pca, Lda, L2blda, L1blda };

std::string to_string(Method m);
std::optional<Method> method_from_string(std::string_view s);

/// Column-orthonormal n x d transform produced by every solver.
struct ProjectionMatrix {
    Matrix w;
    Method method = Method::Pca;
    double objective = 0.0;
    std::uint64_t seed = 0;

    Index input_dim() const { return w.rows(); }
    Index output_dim() const { return w.cols(); }
    /// ||w'w - I||_F
    double orthonormality_error() const;
};

/// Malformed or inconsistent input data (files, labels, shapes).
class DataError : public std::runtime_error {
  public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Non-finite values or a diverging iteration.
class NumericalError : public std::runtime_error {
  public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace blda
