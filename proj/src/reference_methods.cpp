#include "cable/reference_methods.hpp"

#include <cmath>
#include <stdexcept>

namespace cable {

MeasuredFrequencies MeasuredFrequencies::consecutive(const std::vector<double>& hz) {
    MeasuredFrequencies m;
    m.values = hz;
    for (std::size_t i = 0; i < hz.size(); ++i) m.orders.push_back(static_cast<int>(i) + 1);
    return m;
}

MeasuredFrequencies MeasuredFrequencies::first(std::size_t count) const {
    if (count > size()) throw std::invalid_argument("measured frequencies: cannot keep more than available");
    MeasuredFrequencies m;
    m.orders.assign(orders.begin(), orders.begin() + count);
    m.values.assign(values.begin(), values.begin() + count);
    return m;
}

void MeasuredFrequencies::validate() const {
    if (values.empty()) throw std::invalid_argument("measured frequencies: at least one value required");
    if (orders.size() != values.size()) throw std::invalid_argument("measured frequencies: orders/values length mismatch");
    for (std::size_t i = 0; i < size(); ++i) {
        if (orders[i] < 1) throw std::invalid_argument("measured frequencies: orders start at 1");
        if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
            throw std::invalid_argument("measured frequencies: values must be positive");
        }
        if (i > 0 && (orders[i] <= orders[i - 1] || values[i] < values[i - 1])) {
            throw std::invalid_argument("measured frequencies: must ascend by order");
        }
    }
}

double string_theory_tension(double m, double L, const MeasuredFrequencies& measured) {
    measured.validate();
    double sum = 0.0;
    for (std::size_t k = 0; k < measured.size(); ++k) {
        const double r = measured.values[k] / measured.orders[k];
        sum += 4.0 * m * L * L * r * r;
    }
    return sum / measured.size();
}

BeamRegressionResult beam_regression(double m, double L, const MeasuredFrequencies& measured) {
    measured.validate();
    if (measured.size() < 2) throw std::invalid_argument("beam regression needs at least two orders");
    const double N = static_cast<double>(measured.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < measured.size(); ++k) {
        const double i = measured.orders[k];
        const double x = i * i;
        const double y = std::pow(measured.values[k] / i, 2);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (N * sxy - sx * sy) / (N * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / N;

    BeamRegressionResult out;
    out.EI = slope * 4.0 * m * std::pow(L, 4) / (M_PI * M_PI);
    out.H = intercept * 4.0 * m * L * L;
    double ss = 0.0;
    for (std::size_t k = 0; k < measured.size(); ++k) {
        const double i = measured.orders[k];
        const double e = std::pow(measured.values[k] / i, 2) - (slope * i * i + intercept);
        ss += e * e;
    }
    out.residual = std::sqrt(ss / N);
    out.valid = out.H > 0.0 && out.EI > 0.0;
    if (!(out.H > 0.0)) out.note = "fitted tension is not positive";
    else if (!(out.EI > 0.0)) out.note = "fitted flexural stiffness is not positive";
    return out;
}

TensionEstimate beam_known_EI(double m, double L, double EI, const MeasuredFrequencies& measured) {
    measured.validate();
    double sum = 0.0;
    for (std::size_t k = 0; k < measured.size(); ++k) {
        const double i = measured.orders[k];
        const double r = measured.values[k] / i;
        sum += 4.0 * m * L * L * (r * r - EI * M_PI * M_PI * i * i / (4.0 * m * std::pow(L, 4)));
    }
    TensionEstimate t;
    t.H = sum / measured.size();
    t.valid = t.H > 0.0;
    return t;
}

}  // namespace cable
