// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "exactkrylov/core/hexfloat.hpp"

namespace exactkrylov {

/// Per-iteration metric values of one experiment.
struct MetricSeries {
    struct Row {
        std::size_t k = 0;
        std::string metric;
        double value = 0.0;
    };

    std::string experiment;
    std::vector<Row> rows;

    /// Appends a row; k must not decrease within one metric.
    void add(std::size_t k, const std::string& metric, double value);

    /// Largest value of one metric (-inf when absent).
    double max(const std::string& metric) const;

    std::vector<double> values(const std::string& metric) const;
};

/// Header "experiment,k,metric,value,hex"; values as shortest round-trip
/// decimal plus a hexadecimal column.
void write_csv(std::ostream& out, const MetricSeries& series);

/// Quotes a CSV field when it contains a separator, quote or newline.
std::string csv_field(const std::string& text);

}  // namespace exactkrylov
