// SPDX-License-Identifier: Apache-2.0

#include "exactkrylov/harness/csv.hpp"

#include <limits>

#include "exactkrylov/core/scalar.hpp"

namespace exactkrylov {

void MetricSeries::add(std::size_t k, const std::string& metric, double value) {
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
        if (it->metric != metric) continue;
        if (k <= it->k) throw PreconditionViolation("MetricSeries: k must increase within metric " + metric);
        break;
    }
    rows.push_back({k, metric, value});
}

double MetricSeries::max(const std::string& metric) const {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& r : rows)
        if (r.metric == metric && r.value > m) m = r.value;
    return m;
}

std::vector<double> MetricSeries::values(const std::string& metric) const {
    std::vector<double> out;
    for (const auto& r : rows)
        if (r.metric == metric) out.push_back(r.value);
    return out;
}

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void write_csv(std::ostream& out, const MetricSeries& series) {
    out << "experiment,k,metric,value,hex\n";
    for (const auto& r : series.rows) {
        out << csv_field(series.experiment) << ',' << r.k << ',' << csv_field(r.metric) << ','
            << format_shortest(r.value) << ',' << format_hex(r.value) << '\n';
    }
}

}  // namespace exactkrylov
