#include "gmentropy/presets.hpp"

#include <stdexcept>

namespace gmentropy {

namespace {

Vector vec(std::initializer_list<double> values) {
    Vector v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double x : values) v[i++] = x;
    return v;
}

/// Alternating (-a, a, -a, a, ...) of length n.
Vector alternating(int n, double a) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = (i % 2 == 0) ? -a : a;
    return v;
}

Matrix mat2(double a, double b, double c, double d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

GaussianMixture spherical(std::vector<double> weights, const std::vector<Vector>& means) {
    std::vector<GaussianComponent> comps;
    for (const auto& w : means) comps.emplace_back(w, Matrix::Identity(w.size(), w.size()));
    return GaussianMixture(std::move(weights), std::move(comps));
}

GaussianMixture row1() {
    return spherical({0.2, 0.3, 0.5}, {vec({1, 0}), vec({-1, 0}), vec({0, 1.5})});
}

GaussianMixture row2() {
    std::vector<GaussianComponent> comps;
    comps.emplace_back(vec({0, 0}), mat2(1, 0, 0, 3));
    comps.emplace_back(vec({-1.5, 1.5}), mat2(1, 0.2, 0.2, 1));
    comps.emplace_back(vec({1.5, 1.5}), mat2(1, -0.2, -0.2, 1));
    return GaussianMixture({0.2, 0.3, 0.5}, std::move(comps));
}

GaussianMixture q4(int n) {
    return spherical({0.2, 0.3, 0.3, 0.2},
                     {Vector::Zero(n), alternating(n, 1.5), Vector::Constant(n, 1.5), Vector::Ones(n)});
}

GaussianMixture row5() {
    return spherical({0.2, 0.3, 0.3, 0.1, 0.1}, {Vector::Zero(4), alternating(4, 1.5), Vector::Constant(4, 1.5),
                                                 Vector::Ones(4), alternating(4, 3.0)});
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"table1_row1", "table1_row2", "table1_row3", "table1_row4", "table1_row5"};
}

std::optional<GaussianMixture> find_preset(const std::string& name) {
    if (name == "table1_row1") return row1();
    if (name == "table1_row2") return row2();
    if (name == "table1_row3") return q4(3);
    if (name == "table1_row4") return q4(8);
    if (name == "table1_row5") return row5();
    return std::nullopt;
}

GaussianMixture preset(const std::string& name) {
    auto mix = find_preset(name);
    if (!mix) throw std::out_of_range("unknown preset '" + name + "'");
    return *std::move(mix);
}

}  // namespace gmentropy
