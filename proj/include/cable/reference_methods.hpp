#pragma once

#include <string>
#include <vector>

namespace cable {

struct MeasuredFrequencies {
    std::vector<int> orders;     // mode orders, 1-based, strictly increasing
    std::vector<double> values;  // Hz

    static MeasuredFrequencies consecutive(const std::vector<double>& hz);  // orders 1..N
    std::size_t size() const { return values.size(); }
    int highest_order() const { return orders.empty() ? 0 : orders.back(); }
    MeasuredFrequencies first(std::size_t count) const;
    void validate() const;  // throws std::invalid_argument

    bool operator==(const MeasuredFrequencies&) const = default;
};

// Taut string: mean over orders of 4mL²(f_i/i)².
double string_theory_tension(double m, double L, const MeasuredFrequencies& measured);

struct BeamRegressionResult {
    double H = 0.0;
    double EI = 0.0;
    double residual = 0.0;  // RMS of the fit in (f/i)² units
    bool valid = false;     // false when the fitted H or EI is not positive
    std::string note;
};

// Least squares of (f_i/i)² on i².
BeamRegressionResult beam_regression(double m, double L, const MeasuredFrequencies& measured);

struct TensionEstimate {
    double H = 0.0;
    bool valid = false;
};

// Hinged axially loaded beam with EI known.
TensionEstimate beam_known_EI(double m, double L, double EI, const MeasuredFrequencies& measured);

}  // namespace cable
