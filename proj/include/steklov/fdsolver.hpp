#pragma once

#include <array>
#include <memory>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace steklov {

enum class Face { Bottom = 0, Top = 1, Left = 2, Right = 3 };

enum class FaceKind {
  Steklov,   // Delta u + lambda rho u_nu = 0, w = g unknown
  SoftFree,  // Delta u = 0, i.e. w = 0
  HardNu,    // u_nu = 0, w eliminated by Schur complement
};

struct FaceCondition {
  FaceKind kind = FaceKind::SoftFree;
  double rho = 1.0;  // meaningful for Steklov faces only
};

// Per-face conditions; u = 0 on the whole boundary in every configuration.
struct BoundaryPartition {
  std::array<FaceCondition, 4> faces;

  const FaceCondition& at(Face f) const { return faces[static_cast<int>(f)]; }
  FaceCondition& at(Face f) { return faces[static_cast<int>(f)]; }
  void validate() const;  // at least one Steklov face
};

// Uniform grid on [0,a]x[0,b] with N_x x N_y cells. Interior unknowns are
// the (N_x-1)(N_y-1) interior nodes; boundary unknowns live on the four
// open faces, corners excluded.
class Grid2D {
public:
  Grid2D(double a, double b, int nx, int ny);

  double a() const { return a_; }
  double b() const { return b_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double hx() const { return hx_; }
  double hy() const { return hy_; }

  int interior_count() const { return (nx_ - 1) * (ny_ - 1); }
  int boundary_count() const { return 2 * (nx_ - 1) + 2 * (ny_ - 1); }

  int interior_index(int i, int j) const {  // i in [1,nx-1], j in [1,ny-1]
    return (j - 1) * (nx_ - 1) + (i - 1);
  }

  struct BoundaryNode {
    Face face;
    int i, j;     // grid coordinates (corner-free)
    double x, y;
  };
  const std::vector<BoundaryNode>& boundary_nodes() const { return bnodes_; }
  // Arc step along the face a boundary node belongs to.
  double face_step(Face f) const {
    return (f == Face::Bottom || f == Face::Top) ? hx_ : hy_;
  }

private:
  double a_, b_, hx_, hy_;
  int nx_, ny_;
  std::vector<BoundaryNode> bnodes_;
};

// 5-point Laplacian with Dirichlet boundary, factored once per grid and
// reused for every boundary basis column.
class PoissonSolver {
public:
  explicit PoissonSolver(const Grid2D& grid);

  // Delta_h w = 0 in the interior, w = g on boundary nodes (g indexed like
  // Grid2D::boundary_nodes(); corners are treated as zero).
  Eigen::VectorXd harmonic_extension(const Eigen::VectorXd& g) const;

  // Delta_h u = f in the interior, u = 0 on the boundary.
  Eigen::VectorXd poisson_dirichlet(const Eigen::VectorXd& f) const;

  const Grid2D& grid() const { return grid_; }

private:
  void check_residual(const Eigen::VectorXd& sol, const Eigen::VectorXd& rhs,
                      double scale) const;
  Grid2D grid_;
  Eigen::SparseMatrix<double> neg_laplacian_;  // SPD: -Delta_h
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> factorization_;
};

// Second-order one-sided inward normal derivative (4u1 - u2)/(2h) of an
// interior field with zero boundary values, at every boundary node; nodes
// adjacent to a corner fall back to the first-order u1/h to avoid stencil
// overreach into the other face's boundary layer.
Eigen::VectorXd normal_derivative(const Grid2D& grid, const Eigen::VectorXd& u);

// Discrete Neumann-to-Laplacian boundary operator in symmetric pencil form.
//
// The boundary trace of u_nu is computed from the compact relation
//   (I - (h^2/12) d^2/dtau^2) u_nu = u1/h - h (5 g / 12 + w1 / 12),
// which exploits u_tautau = 0 and u_nunu = w = g on the boundary; the
// right-hand side matrix Q is exactly symmetric because it only probes the
// first interior layer, and P (per-face tridiagonal -1/12, 7/6, -1/12) is a
// symmetric positive definite quadrature-like weight. HardNu nodes are
// eliminated by the Schur complement of Q (P is face-block-diagonal, so the
// elimination stays in pencil form), giving the Steklov-node operator
// F_hat = P^{-1/2} Q_hat P^{-1/2}, symmetric and similar to P^{-1} Q_hat.
struct BoundaryOperator {
  Eigen::MatrixXd F_hat;                 // P^{-1/2} Q_hat P^{-1/2}, symmetric
  Eigen::MatrixXd Q_hat;                 // Q_SS - Q_SH Q_HH^{-1} Q_HS
  Eigen::MatrixXd P;                     // tangential correction weight on S
  Eigen::MatrixXd P_inv_sqrt;            // symmetric inverse square root of P
  Eigen::MatrixXd hard_completion;       // g_H = hard_completion * g_S
  std::vector<int> steklov_nodes;        // indices into boundary_nodes()
  std::vector<int> hardnu_nodes;
  Eigen::VectorXd rho;                   // per Steklov node
  Eigen::VectorXd arc_step;              // per Steklov node
  std::shared_ptr<const PoissonSolver> solver;
};

BoundaryOperator assemble_boundary_operator(const Grid2D& grid,
                                            const BoundaryPartition& part);

struct SteklovSpectrum {
  std::vector<double> eigenvalues;          // ascending, all positive
  std::vector<Eigen::VectorXd> boundary_modes;  // w-traces g on Steklov nodes
  std::vector<double> rayleigh_residuals;
  double asymmetry_norm;
};

// Symmetrized dense eigensolve (cyclic Jacobi) of rho^{1/2} F_hat rho^{1/2};
// eigenvalues mu must all be negative, lambda = -1/mu returned ascending.
SteklovSpectrum steklov_spectrum_2d(const Grid2D& grid,
                                    const BoundaryPartition& part, int K);
SteklovSpectrum steklov_spectrum_2d(const BoundaryOperator& op, int K);

// Discrete Rayleigh quotient of a Steklov-face trace g: the ratio
// int |Delta u|^2 / int rho u_nu^2 with the volume integral reduced to the
// boundary via the discrete Green identity and both boundary integrals taken
// in the P-weighted product induced by the trace scheme, so eigenmodes
// reproduce their eigenvalues to solver precision and random traces respect
// the variational lower bound exactly.
double rayleigh_quotient(const BoundaryOperator& op, const Eigen::VectorXd& g);
double rayleigh_quotient(const Grid2D& grid, const BoundaryPartition& part,
                         const Eigen::VectorXd& g);

// Dense symmetric eigendecomposition by cyclic Jacobi rotations; off-diagonal
// Frobenius norm reduced below tol * ||M||_F. Returns ascending eigenvalues
// and matching eigenvector columns.
void jacobi_eigensolve(Eigen::MatrixXd M, Eigen::VectorXd& values,
                       Eigen::MatrixXd& vectors, double tol = 1e-12);

}  // namespace steklov
