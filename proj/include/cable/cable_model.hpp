#pragma once

#include "cable/band_matrix.hpp"

#include <Eigen/Dense>

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace cable {

// Sentinel for a rigid support. Any infinite value is treated the same way.
inline constexpr double kRigid = std::numeric_limits<double>::infinity();
inline bool is_rigid(double k) { return k == kRigid; }

// Raised by model construction; `stage` names the failing operation.
class ModelError : public std::runtime_error {
public:
    ModelError(std::string stage, const std::string& what)
        : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

struct Discretization {
    int n = 0;
    double a = 0.0;
    std::vector<double> x_nodes;  // 0..n+1

    static Discretization uniform(double L, int n);
};

struct CableProperties {
    double m = 0.0;
    double g = 9.8;
    double L = 0.0;
    double theta = 0.0;  // rad
    std::vector<double> EI_profile;
    std::vector<double> EA_profile;
    std::vector<double> m_profile;

    static CableProperties uniform(double m, double g, double L, double theta, double EI, double EA, int n);
    void validate(const Discretization& disc) const;
};

struct BoundaryStiffness {
    double Kr1 = 0.0;
    double Kr2 = 0.0;
    double Ks1 = kRigid;
    double Ks2 = kRigid;

    bool operator==(const BoundaryStiffness&) const = default;
};

struct TensionField {
    double H_m = 0.0;
    double H_A = 0.0;
    std::vector<double> H_nodes;  // 0..n+1
};

TensionField build_tension_field(const CableProperties& props, const Discretization& disc, double H_m);

struct StencilRow {
    double V = 0, D = 0, S = 0, U = 0, W = 0;
};

enum class StencilKind { dynamic, static_load };

// Rows indexed by node, size n+2; entries 0 and n+1 are unused.
std::vector<StencilRow> assemble_interior_stencil(const CableProperties& props, const Discretization& disc,
                                                  const TensionField& tension,
                                                  StencilKind kind = StencilKind::dynamic);

// Ghost-node elimination at one end. With w_b the boundary node and w_1 the
// first internal node (mirrored at the right end): w_b = c·w_1 and
// w_ghost = (e + beta·c)·w_1.
struct EndCondition {
    double e = 0.0;
    double beta = 0.0;
    double c = 0.0;
};

EndCondition end_condition(double Kr, double Ks, double EI, double H, double a, const std::string& end);

struct BoundaryElements {
    double Q = 0, R = 0, P = 0, G = 0;
    EndCondition left, right;
};

BoundaryElements boundary_elements(const CableProperties& props, const Discretization& disc,
                                   const TensionField& tension, const BoundaryStiffness& bc,
                                   const std::vector<StencilRow>& stencil);

BandMatrix assemble_linear_stiffness(const std::vector<StencilRow>& stencil, const BoundaryElements& be);

struct StaticStiffness {
    BandMatrix K_s;
    BoundaryElements boundary;
};

StaticStiffness assemble_static_stiffness(const CableProperties& props, const Discretization& disc,
                                          const TensionField& tension, const BoundaryStiffness& bc);

struct StaticProfile {
    std::vector<double> y_nodes;  // 0..n+1
    double relative_residual = 0.0;
    double rcond = 0.0;
};

StaticProfile solve_static_profile(const StaticStiffness& ks, const CableProperties& props, const Discretization& disc);

// K2 = z·zᵀ / compliance, kept in factored form.
struct NonlinearStiffness {
    Eigen::VectorXd z;
    double compliance = 1.0;

    Eigen::MatrixXd dense() const;
    Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
};

NonlinearStiffness assemble_nonlinear_stiffness(const StaticProfile& profile, const CableProperties& props,
                                                const Discretization& disc);

struct AssembledSystem {
    TensionField tension;
    StaticProfile profile;
    BandMatrix K1;
    NonlinearStiffness K2;
    Eigen::VectorXd M_diag;

    int size() const { return K1.size(); }
    Eigen::MatrixXd K() const;
    Eigen::MatrixXd M() const { return M_diag.asDiagonal(); }
};

AssembledSystem assemble_cable(const CableProperties& props, const Discretization& disc, double H_m,
                               const BoundaryStiffness& bc);

struct Nondimensional {
    double lambda2 = 0.0;
    double zeta = 0.0;
};

Nondimensional compute_nondimensional(const CableProperties& props, double H_m, double EI, double EA);

}  // namespace cable
