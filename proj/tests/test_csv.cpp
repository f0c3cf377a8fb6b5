#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "gmentropy/csv.hpp"

using namespace gmentropy;

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out(1);
    for (char ch : line) {
        if (ch == ',')
            out.emplace_back();
        else
            out.back() += ch;
    }
    return out;
}

}  // namespace

TEST_CASE("header is the fixed schema") {
    CHECK(std::string(kCsvHeader) ==
          "mixture_id,method,C,r,beta,m,b,h_est,std_error,pct_error_vs_oracle,certified_lower_bound,solve_mode,"
          "condition_estimate,runtime_ms");
    CHECK(split(kCsvHeader).size() == 14);
}

TEST_CASE("rows keep every column, empty when absent") {
    EntropyEstimate bound;
    bound.method = Method::component_bound;
    bound.value = 3.5;
    const auto cols = split(format_row({"table1_row1", bound, std::nullopt, std::nullopt}));
    REQUIRE(cols.size() == 14);
    CHECK(cols[0] == "table1_row1");
    CHECK(cols[1] == "component_bound");
    CHECK(cols[7] == "3.5");
    for (std::size_t i : {2, 3, 4, 5, 6, 8, 9, 10, 11, 12, 13}) CHECK(cols[i].empty());

    EntropyEstimate poly;
    poly.method = Method::polyfit;
    poly.value = 3.2;
    poly.order = 5;
    poly.r = -2.5;
    poly.b = 0.1;
    poly.solve_mode = SolveMode::exact_rational;
    poly.condition_estimate = 1e6;
    poly.certified_lower_bound = false;
    const auto pcols = split(format_row({"x", poly, 0.25, 12.0}));
    CHECK(pcols[2] == "5");
    CHECK(pcols[3] == "-2.5");
    CHECK(pcols[9] == "0.25");
    CHECK(pcols[10] == "false");
    CHECK(pcols[11] == "exact_rational");
    CHECK(pcols[12] == "1000000");
    CHECK(pcols[13] == "12");
}

TEST_CASE("bits divide the entropy and its error only") {
    EntropyEstimate mc;
    mc.method = Method::mc;
    mc.value = std::log(2.0) * 3.0;
    mc.std_error = std::log(2.0) * 0.5;
    const auto cols = split(format_row({"m", mc, 1.5, std::nullopt}, std::log(2.0)));
    CHECK(std::strtod(cols[7].c_str(), nullptr) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(std::strtod(cols[8].c_str(), nullptr) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(cols[9] == "1.5");
}

TEST_CASE("reals are written with round-trip precision") {
    for (double v : {0.1, 1.0 / 3.0, -2.220446049250313e-16, 1e300, 12345.678901234567})
        CHECK(std::strtod(format_real(v).c_str(), nullptr) == v);
}

TEST_CASE("write_csv emits header then rows") {
    std::ostringstream out;
    EntropyEstimate e;
    e.value = 1.0;
    write_csv(out, {{"a", e, std::nullopt, std::nullopt}, {"b", e, std::nullopt, std::nullopt}});
    const auto text = out.str();
    CHECK(text.rfind(kCsvHeader, 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
    CHECK(method_from_string("polyfit") == Method::polyfit);
    CHECK_THROWS_AS(method_from_string("nope"), std::invalid_argument);
}
