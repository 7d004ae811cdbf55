#include "cable/modal_solver.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

namespace cable {

namespace {

constexpr double kImagTol = 1e-8;
constexpr double kTieTol = 1e-10;
constexpr double kTwoPi = 2.0 * M_PI;

bool admissible(std::complex<double> lambda) {
    return lambda.real() > 0.0 && std::abs(lambda.imag()) <= kImagTol * std::abs(lambda.real());
}

Eigen::VectorXd realify(const Eigen::VectorXcd& v) {
    Eigen::Index k = 0;
    v.cwiseAbs().maxCoeff(&k);
    const std::complex<double> phase = std::abs(v[k]) > 0 ? std::conj(v[k]) / std::abs(v[k]) : 1.0;
    Eigen::VectorXd r = (v * phase).real();
    const double nrm = r.norm();
    return nrm > 0 ? Eigen::VectorXd(r / nrm) : r;
}

Eigen::Index dominance_index(const Eigen::VectorXd& v) {
    Eigen::Index k = 0;
    v.cwiseAbs().maxCoeff(&k);
    return k;
}

Eigen::VectorXd apply_K(const AssembledSystem& s, const Eigen::VectorXd& v) {
    return s.K1.multiply(v) + s.K2.apply(v);
}

struct Candidate {
    double lambda;
    Eigen::VectorXd shape;
    Eigen::Index dominance;
};

void order_candidates(std::vector<Candidate>& c) {
    std::sort(c.begin(), c.end(), [](const Candidate& x, const Candidate& y) {
        if (std::abs(x.lambda - y.lambda) <= kTieTol * std::max(std::abs(x.lambda), std::abs(y.lambda))) {
            return x.dominance < y.dominance;
        }
        return x.lambda < y.lambda;
    });
}

ModalSolution finish(const AssembledSystem& system, std::vector<Candidate> cands, int n_modes, int discarded) {
    order_candidates(cands);
    if (static_cast<int>(cands.size()) < n_modes) {
        throw SolverError("only " + std::to_string(cands.size()) + " admissible eigenvalues, " +
                          std::to_string(n_modes) + " requested");
    }
    ModalSolution sol;
    sol.discarded_count = discarded;
    sol.mode_shapes.resize(system.size(), n_modes);
    for (int i = 0; i < n_modes; ++i) {
        const auto& c = cands[i];
        sol.omegas.push_back(std::sqrt(c.lambda));
        sol.frequencies.push_back(sol.omegas.back() / kTwoPi);
        sol.mode_shapes.col(i) = c.shape;
        const Eigen::VectorXd r = apply_K(system, c.shape) - c.lambda * system.M_diag.cwiseProduct(c.shape);
        sol.residuals.push_back(r.norm());
    }
    return sol;
}

// Shift-invert Arnoldi on K⁻¹M. K1 is factored once; the rank-one K2
// enters through Sherman-Morrison. Converged Ritz pairs are verified against
// the unreduced problem before they are returned.
std::vector<double> krylov_frequencies(const AssembledSystem& s, int k) {
    const int n = s.size();
    BandLU lu(s.K1);
    if (!lu.ok() || lu.rcond() < 1e-14) throw SolverError("krylov: K1 singular");

    const Eigen::VectorXd u = lu.solve(Eigen::VectorXd(s.K2.z));
    const double sm_den = s.K2.compliance + s.K2.z.dot(u);
    if (!(std::abs(sm_den) > 1e-14 * s.K2.compliance)) throw SolverError("krylov: rank-one update singular");

    auto op = [&](const Eigen::VectorXd& v) {
        Eigen::VectorXd w = lu.solve(Eigen::VectorXd(s.M_diag.cwiseProduct(v)));
        w -= u * (s.K2.z.dot(w) / sm_den);
        return w;
    };

    const int m_max = std::min(n, std::max(6 * k, 60));
    int m_check = std::min(m_max, 3 * k + 10);
    Eigen::MatrixXd V = Eigen::MatrixXd::Zero(n, m_max + 1);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m_max + 1, m_max);

    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 1; j <= 2 * k + 4; ++j) acc += std::sin(j * M_PI * (i + 1) / (n + 1));
        V(i, 0) = acc + 1e-3 * ((i * 7919) % 13 - 6);
    }
    V.col(0).normalize();

    constexpr double kTol = 1e-10;
    for (int j = 0; j < m_max; ++j) {
        Eigen::VectorXd w = op(V.col(j));
        for (int pass = 0; pass < 2; ++pass) {
            const Eigen::VectorXd h = V.leftCols(j + 1).transpose() * w;
            w -= V.leftCols(j + 1) * h;
            H.col(j).head(j + 1) += h;
        }
        const double beta = w.norm();
        H(j + 1, j) = beta;
        const bool exhausted = beta <= 1e-14 * H.col(j).head(j + 1).norm();
        if (!exhausted) V.col(j + 1) = w / beta;
        const int m = j + 1;
        if (m < k || (m < m_check && !exhausted && m < m_max)) continue;

        Eigen::EigenSolver<Eigen::MatrixXd> es(H.topLeftCorner(m, m), true);
        if (es.info() == Eigen::Success) {
            const auto& mu = es.eigenvalues();
            std::vector<int> idx(m);
            std::iota(idx.begin(), idx.end(), 0);
            std::sort(idx.begin(), idx.end(), [&](int a, int b) { return std::abs(mu[a]) > std::abs(mu[b]); });
            std::vector<double> lambdas;
            bool ok = true;
            for (int r = 0; r < k && ok; ++r) {
                const std::complex<double> lam = 1.0 / mu[idx[r]];
                if (!admissible(lam)) throw SolverError("krylov: inadmissible Ritz value");
                const Eigen::VectorXd x = V.leftCols(m) * realify(es.eigenvectors().col(idx[r]));
                const Eigen::VectorXd Mx = s.M_diag.cwiseProduct(x);
                const double res = (apply_K(s, x) - lam.real() * Mx).norm() / (lam.real() * Mx.norm());
                ok = res <= kTol;
                lambdas.push_back(lam.real());
            }
            if (ok) {
                std::sort(lambdas.begin(), lambdas.end());
                std::vector<double> freqs;
                for (double l : lambdas) freqs.push_back(std::sqrt(l) / kTwoPi);
                return freqs;
            }
        }
        if (exhausted) break;
        m_check = std::min(m_max, m + 10);
    }
    throw SolverError("krylov iteration did not converge");
}

}  // namespace

ModalSolution solve_modes(const AssembledSystem& system, int n_modes) {
    const int n = system.size();
    if (n_modes < 1 || n_modes > n) throw SolverError("n_modes must lie in [1, n]");
    if ((system.M_diag.array() <= 0.0).any()) throw SolverError("mass matrix must be positive");

    const Eigen::MatrixXd K = system.K();
    const Eigen::MatrixXd A = system.M_diag.cwiseInverse().asDiagonal() * K;
    Eigen::EigenSolver<Eigen::MatrixXd> es(A, true);
    if (es.info() != Eigen::Success) throw SolverError("dense eigensolver did not converge");

    std::vector<Candidate> cands;
    int discarded = 0;
    for (int i = 0; i < n; ++i) {
        const auto lam = es.eigenvalues()[i];
        if (!admissible(lam)) {
            ++discarded;
            continue;
        }
        Eigen::VectorXd w = realify(es.eigenvectors().col(i));
        const auto dom = dominance_index(w);
        cands.push_back({lam.real(), std::move(w), dom});
    }
    return finish(system, std::move(cands), n_modes, discarded);
}

std::vector<double> lowest_frequencies(const AssembledSystem& system, int n_modes, EigenMethod method) {
    if (method == EigenMethod::dense) return solve_modes(system, n_modes).frequencies;
    if (n_modes < 1 || n_modes > system.size()) throw SolverError("n_modes must lie in [1, n]");
    if (method == EigenMethod::krylov) return krylov_frequencies(system, n_modes);
    try {
        return krylov_frequencies(system, n_modes);
    } catch (const SolverError&) {
        return solve_modes(system, n_modes).frequencies;
    }
}

}  // namespace cable
