#include "gmentropy/mixture_io.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace gmentropy {

namespace {

int line_of(const YAML::Node& node) {
    const auto mark = node.Mark();
    return mark.line >= 0 ? mark.line + 1 : 0;
}

double as_real(const YAML::Node& node, const std::string& what) {
    if (!node.IsScalar()) throw MixtureParseError(line_of(node), what + " must be a number");
    try {
        return node.as<double>();
    } catch (const YAML::Exception&) {
        throw MixtureParseError(line_of(node), what + " must be a number, got '" + node.Scalar() + "'");
    }
}

Vector as_vector(const YAML::Node& node, int expected, const std::string& what) {
    if (!node.IsSequence()) throw MixtureParseError(line_of(node), what + " must be a list");
    if (static_cast<int>(node.size()) != expected)
        throw MixtureParseError(line_of(node), what + " has " + std::to_string(node.size()) +
                                                   " entries, expected " + std::to_string(expected));
    Vector v(expected);
    for (int i = 0; i < expected; ++i) v[i] = as_real(node[static_cast<std::size_t>(i)], what);
    return v;
}

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

GaussianMixture parse_mixture(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw MixtureParseError(e.mark.line + 1, e.msg);
    }
    if (!root.IsMap()) throw MixtureParseError(line_of(root), "config must be a mapping");

    const auto dim_node = root["dimension"];
    if (!dim_node) throw MixtureParseError(line_of(root), "missing field 'dimension'");
    const double dim_real = as_real(dim_node, "dimension");
    const int n = static_cast<int>(dim_real);
    if (dim_real != n || n < 1) throw MixtureParseError(line_of(dim_node), "dimension must be a positive integer");

    const auto weights_node = root["weights"];
    if (!weights_node) throw MixtureParseError(line_of(root), "missing field 'weights'");
    if (!weights_node.IsSequence() || weights_node.size() == 0)
        throw MixtureParseError(line_of(weights_node), "weights must be a non-empty list");
    const auto comps_node = root["components"];
    if (!comps_node) throw MixtureParseError(line_of(root), "missing field 'components'");
    if (!comps_node.IsSequence()) throw MixtureParseError(line_of(comps_node), "components must be a list");
    if (comps_node.size() != weights_node.size())
        throw MixtureParseError(line_of(comps_node), "components has " + std::to_string(comps_node.size()) +
                                                         " entries but weights has " +
                                                         std::to_string(weights_node.size()));

    std::vector<double> weights;
    double total = 0.0;
    for (std::size_t j = 0; j < weights_node.size(); ++j) {
        const double p = as_real(weights_node[j], "weight");
        if (!(p > 0.0)) throw MixtureParseError(line_of(weights_node[j]), "weights must be positive");
        weights.push_back(p);
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw MixtureParseError(line_of(weights_node), "weights sum to " + fmt17(total) + ", expected 1 within 1e-12");

    std::vector<GaussianComponent> comps;
    for (std::size_t j = 0; j < comps_node.size(); ++j) {
        const auto node = comps_node[j];
        const std::string label = "component " + std::to_string(j);
        if (!node.IsMap()) throw MixtureParseError(line_of(node), label + " must be a mapping");
        const auto mean_node = node["mean"];
        const auto cov_node = node["covariance"];
        if (!mean_node) throw MixtureParseError(line_of(node), label + ": missing 'mean'");
        if (!cov_node) throw MixtureParseError(line_of(node), label + ": missing 'covariance'");
        Vector mean = as_vector(mean_node, n, label + " mean");
        if (!cov_node.IsSequence() || static_cast<int>(cov_node.size()) != n)
            throw MixtureParseError(line_of(cov_node), label + " covariance must have " + std::to_string(n) + " rows");
        Matrix cov(n, n);
        for (int i = 0; i < n; ++i)
            cov.row(i) = as_vector(cov_node[static_cast<std::size_t>(i)], n, label + " covariance row").transpose();
        try {
            comps.emplace_back(std::move(mean), std::move(cov));
        } catch (const std::invalid_argument& e) {
            throw MixtureParseError(line_of(cov_node), label + ": " + e.what());
        }
    }
    return GaussianMixture(std::move(weights), std::move(comps));
}

GaussianMixture load_mixture(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw MixtureParseError(0, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_mixture(buf.str());
}

std::string to_config_text(const GaussianMixture& mix) {
    std::ostringstream out;
    const int n = mix.dimension();
    out << "dimension: " << n << "\nweights: [";
    for (int j = 0; j < mix.size(); ++j) out << (j ? ", " : "") << fmt17(mix.weights()[static_cast<std::size_t>(j)]);
    out << "]\ncomponents:\n";
    for (const auto& c : mix.components()) {
        out << "  - mean: [";
        for (int i = 0; i < n; ++i) out << (i ? ", " : "") << fmt17(c.mean()[i]);
        out << "]\n    covariance: [";
        for (int i = 0; i < n; ++i) {
            out << (i ? ", " : "") << "[";
            for (int k = 0; k < n; ++k) out << (k ? ", " : "") << fmt17(c.covariance()(i, k));
            out << "]";
        }
        out << "]\n";
    }
    return out.str();
}

std::string canonical_string(const GaussianMixture& mix) {
    const int n = mix.dimension();
    std::vector<std::string> entries;
    for (int j = 0; j < mix.size(); ++j) {
        const auto& c = mix.component(j);
        std::string s = "p=" + fmt17(mix.weights()[static_cast<std::size_t>(j)]) + ";w=";
        for (int i = 0; i < n; ++i) s += fmt17(c.mean()[i]) + ",";
        s += ";K=";
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) s += fmt17(c.covariance()(i, k)) + ",";
        entries.push_back(std::move(s));
    }
    std::sort(entries.begin(), entries.end());
    std::string out = "n=" + std::to_string(n);
    for (const auto& e : entries) out += "|" + e;
    return out;
}

std::string mixture_hash(const GaussianMixture& mix) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : canonical_string(mix)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace gmentropy
