#include "cable/cable_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace cable {

namespace {

constexpr double kDenominatorTol = 1e-12;

std::string num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

Discretization Discretization::uniform(double L, int n) {
    if (n < 5) throw ModelError("discretization", "n must be at least 5, got " + std::to_string(n));
    if (!(L > 0.0)) throw ModelError("discretization", "L must be positive");
    Discretization d;
    d.n = n;
    d.a = L / (n + 1);
    d.x_nodes.resize(n + 2);
    for (int i = 0; i <= n + 1; ++i) d.x_nodes[i] = i * d.a;
    d.x_nodes[n + 1] = L;
    return d;
}

CableProperties CableProperties::uniform(double m, double g, double L, double theta, double EI, double EA, int n) {
    CableProperties p;
    p.m = m;
    p.g = g;
    p.L = L;
    p.theta = theta;
    p.EI_profile.assign(n + 2, EI);
    p.EA_profile.assign(n + 2, EA);
    p.m_profile.assign(n + 2, m);
    return p;
}

void CableProperties::validate(const Discretization& disc) const {
    if (!(m > 0.0)) throw ModelError("cable", "m must be positive");
    if (!(g > 0.0)) throw ModelError("cable", "g must be positive");
    if (!(L > 0.0)) throw ModelError("cable", "L must be positive");
    if (!(theta >= 0.0 && theta <= M_PI / 2 + 1e-12)) throw ModelError("cable", "theta must lie in [0, pi/2]");
    const std::size_t len = static_cast<std::size_t>(disc.n) + 2;
    auto check = [&](const std::vector<double>& v, const char* name) {
        if (v.size() != len) {
            throw ModelError("cable", std::string(name) + " profile has " + std::to_string(v.size()) +
                                          " entries, expected " + std::to_string(len));
        }
        for (double x : v) {
            if (!(x > 0.0) || !std::isfinite(x)) throw ModelError("cable", std::string(name) + " profile must be positive");
        }
    };
    check(EI_profile, "EI");
    check(EA_profile, "EA");
    check(m_profile, "m");
}

TensionField build_tension_field(const CableProperties& props, const Discretization& disc, double H_m) {
    const double drop = props.m * props.g * std::sin(props.theta);
    TensionField t;
    t.H_m = H_m;
    t.H_A = H_m + drop * props.L / 2.0;
    t.H_nodes.resize(disc.x_nodes.size());
    for (std::size_t i = 0; i < disc.x_nodes.size(); ++i) {
        t.H_nodes[i] = t.H_A - drop * disc.x_nodes[i];
        if (!(t.H_nodes[i] > 0.0)) {
            throw ModelError("build_tension_field", "tension at node " + std::to_string(i) + " is " +
                                                        num(t.H_nodes[i]) + " N; H_m too small for the cable weight");
        }
    }
    return t;
}

std::vector<StencilRow> assemble_interior_stencil(const CableProperties& props, const Discretization& disc,
                                                  const TensionField& tension, StencilKind kind) {
    const int n = disc.n;
    const double a2 = disc.a * disc.a;
    const double a4 = a2 * a2;
    const auto& EI = props.EI_profile;
    const auto& H = tension.H_nodes;
    std::vector<StencilRow> rows(n + 2);
    for (int i = 1; i <= n; ++i) {
        StencilRow& r = rows[i];
        r.V = -(EI[i + 1] - 2 * EI[i] - EI[i - 1]) / (2 * a4);
        r.W = (EI[i + 1] + 2 * EI[i] - EI[i - 1]) / (2 * a4);
        r.S = (-2 * EI[i + 1] + 10 * EI[i] - 2 * EI[i - 1]) / a4 + 2 * H[i] / a2;
        r.D = (2 * EI[i + 1] - 6 * EI[i]) / a4 - H[i] / a2;
        r.U = (-6 * EI[i] + 2 * EI[i - 1]) / a4 - H[i] / a2;
        if (kind == StencilKind::dynamic) {
            const double dH = (H[i + 1] - H[i - 1]) / (4 * a2);
            r.D += dH;
            r.U -= dH;
        }
    }
    return rows;
}

EndCondition end_condition(double Kr, double Ks, double EI, double H, double a, const std::string& end) {
    if (Kr < 0.0 || Ks < 0.0) throw ModelError("boundary_elements", end + " end stiffness must be non-negative");
    EndCondition ec;
    if (is_rigid(Kr)) {
        ec.e = 1.0;
        ec.beta = 0.0;
        // A rigid rotational spring alone ties the boundary node to its
        // neighbour; with a rigid lateral support as well the end is clamped.
        ec.c = is_rigid(Ks) ? 0.0 : 1.0;
        return ec;
    }
    const double rot = Kr * a + 2 * EI;
    ec.e = (Kr * a - 2 * EI) / rot;
    ec.beta = 4 * EI / rot;
    if (is_rigid(Ks)) {
        ec.c = 0.0;
        return ec;
    }
    const double num_c = 2 * EI * H - 2 * Kr * Kr;
    const double lat = Ks * a * rot;
    const double den = lat + num_c;
    const double scale = std::abs(lat) + std::abs(2 * EI * H) + 2 * Kr * Kr;
    if (std::abs(den) <= kDenominatorTol * scale) {
        throw ModelError("boundary_elements", "degenerate stiffness combination at the " + end + " end (Kr=" +
                                                  num(Kr) + ", Ks=" + num(Ks) + ")");
    }
    ec.c = num_c / den;
    return ec;
}

BoundaryElements boundary_elements(const CableProperties& props, const Discretization& disc,
                                   const TensionField& tension, const BoundaryStiffness& bc,
                                   const std::vector<StencilRow>& stencil) {
    const int n = disc.n;
    BoundaryElements be;
    be.left = end_condition(bc.Kr1, bc.Ks1, props.EI_profile[0], tension.H_nodes[0], disc.a, "left");
    be.right = end_condition(bc.Kr2, bc.Ks2, props.EI_profile[n + 1], tension.H_nodes[n + 1], disc.a, "right");
    const auto& l = be.left;
    const auto& r = be.right;
    const StencilRow& s1 = stencil[1];
    const StencilRow& s2 = stencil[2];
    const StencilRow& sn = stencil[n];
    const StencilRow& sn1 = stencil[n - 1];
    be.Q = s1.S + l.e * s1.V + l.c * (s1.D + l.beta * s1.V);
    be.R = s2.D + l.c * s2.V;
    be.G = sn.S + r.e * sn.W + r.c * (sn.U + r.beta * sn.W);
    be.P = sn1.U + r.c * sn1.W;
    return be;
}

BandMatrix assemble_linear_stiffness(const std::vector<StencilRow>& stencil, const BoundaryElements& be) {
    const int n = static_cast<int>(stencil.size()) - 2;
    BandMatrix K(n);
    for (int i = 1; i <= n; ++i) {
        const int r = i - 1;
        const StencilRow& s = stencil[i];
        const double vals[5] = {s.V, s.D, s.S, s.U, s.W};
        for (int off = -2; off <= 2; ++off) {
            const int c = r + off;
            if (c >= 0 && c < n) K.at(r, c) = vals[off + 2];
        }
    }
    K.at(0, 0) = be.Q;
    K.at(1, 0) = be.R;
    K.at(n - 1, n - 1) = be.G;
    K.at(n - 2, n - 1) = be.P;
    return K;
}

StaticStiffness assemble_static_stiffness(const CableProperties& props, const Discretization& disc,
                                          const TensionField& tension, const BoundaryStiffness& bc) {
    const auto stencil = assemble_interior_stencil(props, disc, tension, StencilKind::static_load);
    StaticStiffness out;
    out.boundary = boundary_elements(props, disc, tension, bc, stencil);
    out.K_s = assemble_linear_stiffness(stencil, out.boundary);
    return out;
}

StaticProfile solve_static_profile(const StaticStiffness& ks, const CableProperties& props, const Discretization& disc) {
    const int n = disc.n;
    Eigen::VectorXd rhs(n);
    const double load = props.g * std::cos(props.theta);
    for (int i = 0; i < n; ++i) rhs[i] = props.m_profile[i + 1] * load;

    StaticProfile out;
    out.y_nodes.assign(n + 2, 0.0);
    const double rhs_norm = rhs.norm();

    BandLU lu(ks.K_s);
    out.rcond = lu.rcond();
    if (!lu.ok() || out.rcond < 1e-14) {
        throw ModelError("solve_static_profile", "static stiffness is singular or ill-conditioned (rcond=" +
                                                     num(out.rcond) + ")");
    }
    if (rhs_norm == 0.0) return out;

    Eigen::VectorXd y = lu.solve(rhs);
    Eigen::VectorXd res = rhs - ks.K_s.multiply(y);
    y += lu.solve(res);
    res = rhs - ks.K_s.multiply(y);
    out.relative_residual = res.norm() / rhs_norm;
    if (!(out.relative_residual <= 1e-10)) {
        throw ModelError("solve_static_profile", "residual " + num(out.relative_residual) +
                                                     " exceeds tolerance (rcond=" + num(out.rcond) + ")");
    }
    for (int i = 0; i < n; ++i) out.y_nodes[i + 1] = y[i];
    out.y_nodes[0] = ks.boundary.left.c * y[0];
    out.y_nodes[n + 1] = ks.boundary.right.c * y[n - 1];
    return out;
}

Eigen::MatrixXd NonlinearStiffness::dense() const { return z * z.transpose() / compliance; }

Eigen::VectorXd NonlinearStiffness::apply(const Eigen::VectorXd& v) const { return z * (z.dot(v) / compliance); }

NonlinearStiffness assemble_nonlinear_stiffness(const StaticProfile& profile, const CableProperties& props,
                                                const Discretization& disc) {
    const int n = disc.n;
    const double a = disc.a;
    const auto& y = profile.y_nodes;
    NonlinearStiffness k2;
    k2.z.resize(n);
    double compliance = 0.0;
    for (int i = 1; i <= n; ++i) {
        k2.z[i - 1] = (y[i + 1] - 2 * y[i] + y[i - 1]) / (a * a);
        const double slope = (y[i + 1] - y[i - 1]) / (2 * a);
        const double b = std::sqrt(slope * slope + 1.0);
        compliance += b * b * b / props.EA_profile[i];
    }
    k2.compliance = compliance;
    return k2;
}

Eigen::MatrixXd AssembledSystem::K() const { return K1.to_dense() + K2.dense(); }

AssembledSystem assemble_cable(const CableProperties& props, const Discretization& disc, double H_m,
                               const BoundaryStiffness& bc) {
    props.validate(disc);
    AssembledSystem sys;
    sys.tension = build_tension_field(props, disc, H_m);
    const auto ks = assemble_static_stiffness(props, disc, sys.tension, bc);
    sys.profile = solve_static_profile(ks, props, disc);
    const auto stencil = assemble_interior_stencil(props, disc, sys.tension, StencilKind::dynamic);
    sys.K1 = assemble_linear_stiffness(stencil, boundary_elements(props, disc, sys.tension, bc, stencil));
    sys.K2 = assemble_nonlinear_stiffness(sys.profile, props, disc);
    sys.M_diag.resize(disc.n);
    for (int i = 0; i < disc.n; ++i) sys.M_diag[i] = props.m_profile[i + 1];
    return sys;
}

Nondimensional compute_nondimensional(const CableProperties& props, double H_m, double EI, double EA) {
    const double ratio = props.m * props.g * props.L / H_m;
    const double Le = props.L * (1.0 + ratio * ratio / 8.0);
    Nondimensional nd;
    nd.lambda2 = props.L * EA / (H_m * Le) * ratio * ratio;
    nd.zeta = props.L * std::sqrt(H_m / EI);
    return nd;
}

}  // namespace cable
