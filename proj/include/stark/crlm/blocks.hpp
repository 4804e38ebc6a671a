#pragma once

#include <optional>

#include <Eigen/Dense>

#include "stark/crlm/mesh.hpp"
#include "stark/hp/linalg.hpp"

namespace stark::crlm {

using LdMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

/// N x N integrals over one parabolic coordinate with chi_k normalized so
/// that overlap(k, k) = 1:
///   overlap   int chi_k chi_l
///   moment1   int chi_k chi_l x
///   moment2   int chi_k chi_l x^2
///   inverse   int chi_k chi_l / x   (zero for m = 0, where it never enters)
///   kinetic   int x chi_k' chi_l'
struct AxisTables {
    hp::RealMatrix overlap;
    hp::RealMatrix moment1;
    hp::RealMatrix moment2;
    hp::RealMatrix inverse;
    hp::RealMatrix kinetic;
};

struct AssemblyOptions {
    /// Gauss-Laguerre order; 0 picks the smallest allowed, 2N + 2|m| + 6.
    int quad_order = 0;
    /// Round every matrix element of K, G, W and S to this many significant
    /// digits. Models secular-equation integrals of limited accuracy.
    std::optional<int> integral_digits;
};

AxisTables axis_tables(const MeshBasis& mesh, const PrecisionContext& ctx, const AssemblyOptions& opts = {});

/// The four real symmetric N^2 x N^2 matrices of the weak form of
/// (H - E) psi = 0 multiplied by (xi + eta)/4, in the product basis
/// chi_a(xi) chi_b(eta), row index a N + b:
///   K = 1/2 int (xi d_xi phi d_xi phi' + eta d_eta phi d_eta phi') + m^2/8 int phi phi' (1/xi + 1/eta)
///   G = int phi phi'
///   W = int phi phi' (xi^2 - eta^2) / 8
///   S = int phi phi' (xi + eta) / 4
/// Entries are assembled at the working precision and stored rounded.
struct SecularBlocks {
    int size = 0;  // N
    int m = 0;
    int digits = 0;
    LdMatrix K;
    LdMatrix G;
    LdMatrix W;
    LdMatrix S;

    int dim() const { return size * size; }
};

/// Throws std::invalid_argument for quad_order < 2N + 2|m| + 6 or fewer than
/// 20 digits, std::runtime_error when S is not positive definite.
SecularBlocks assemble_blocks(int size, int m, const PrecisionContext& ctx, const AssemblyOptions& opts = {});

}  // namespace stark::crlm
