#include "gmentropy/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace gmentropy {

std::string to_string(Method method) {
    switch (method) {
        case Method::taylor: return "taylor";
        case Method::polyfit: return "polyfit";
        case Method::moment_bound: return "moment_bound";
        case Method::component_bound: return "component_bound";
        case Method::mc: return "mc";
        case Method::grid: return "grid";
    }
    return "unknown";
}

Method method_from_string(const std::string& name) {
    for (auto m : {Method::taylor, Method::polyfit, Method::moment_bound, Method::component_bound, Method::mc,
                   Method::grid})
        if (to_string(m) == name) return m;
    throw std::invalid_argument("unknown method '" + name + "'");
}

std::string to_string(SolveMode mode) {
    return mode == SolveMode::exact_rational ? "exact_rational" : "extended_precision";
}

std::string format_real(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

namespace {

template <typename T, typename F>
std::string field(const std::optional<T>& v, F&& fmt) {
    return v ? fmt(*v) : std::string();
}

std::string real(const std::optional<double>& v) { return field(v, format_real); }

}  // namespace

std::string format_row(const CsvRow& row, double nats_per_unit) {
    const auto& e = row.estimate;
    std::vector<std::string> cols{
        row.mixture_id,
        to_string(e.method),
        field(e.order, [](int c) { return std::to_string(c); }),
        real(e.r),
        real(e.beta),
        real(e.m),
        real(e.b),
        format_real(e.value / nats_per_unit),
        e.std_error ? format_real(*e.std_error / nats_per_unit) : std::string(),
        real(row.pct_error_vs_oracle),
        field(e.certified_lower_bound, [](bool b) { return std::string(b ? "true" : "false"); }),
        field(e.solve_mode, [](SolveMode m) { return to_string(m); }),
        real(e.condition_estimate),
        real(row.runtime_ms),
    };
    std::string line;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) line += ',';
        line += cols[i];
    }
    return line;
}

void write_csv(std::ostream& out, const std::vector<CsvRow>& rows, double nats_per_unit) {
    out << kCsvHeader << '\n';
    for (const auto& row : rows) out << format_row(row, nats_per_unit) << '\n';
}

}  // namespace gmentropy
