#include "asymcyc/module_io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace asymcyc::io {

using nlohmann::json;

namespace {
fred::Mat matrix_from_json(const json& rows) {
    if (!rows.is_array() || rows.empty())
        throw std::invalid_argument("module spec: matrix must be a nonempty array of rows");
    int r = static_cast<int>(rows.size());
    int c = static_cast<int>(rows[0].size());
    fred::Mat m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c)
            throw std::invalid_argument("module spec: ragged matrix");
        for (int j = 0; j < c; ++j) {
            const auto& e = rows[i][j];
            if (e.is_number()) {
                m(i, j) = fred::cplx(e.get<double>(), 0.0);
            } else if (e.is_array() && e.size() == 2) {
                m(i, j) = fred::cplx(e[0].get<double>(), e[1].get<double>());
            } else {
                throw std::invalid_argument("module spec: entry must be re or [re,im]");
            }
        }
    }
    return m;
}

json matrix_to_json(const fred::Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j)
            row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(row);
    }
    return rows;
}
}  // namespace

fred::Mat matrix_from_json_text(const std::string& json_text) {
    return matrix_from_json(json::parse(json_text));
}

ModuleSpec load_module(const std::string& json_text) {
    json j = json::parse(json_text);
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "even") {
        fred::EvenFredholmModule m;
        m.dim_plus = j.at("dim_plus").get<int>();
        m.dim_minus = j.at("dim_minus").get<int>();
        m.D = matrix_from_json(j.at("D"));
        if (j.contains("algebra"))
            for (auto& [name, mat] : j.at("algebra").items())
                m.algebra[name] = matrix_from_json(mat);
        m.epsilon = j.value("epsilon", 0.5);
        m.validate();
        return m;
    }
    if (kind == "odd") {
        fred::OddFredholmModule m;
        m.D = matrix_from_json(j.at("D"));
        m.dim_ = static_cast<int>(m.D.rows());
        m.g = matrix_from_json(j.at("g"));
        m.derivation_constant = j.value("c", 0.0);
        m.validate();
        return m;
    }
    if (kind == "path") {
        PathSpec p;
        p.A0 = matrix_from_json(j.at("A0"));
        p.A1 = matrix_from_json(j.at("A1"));
        if (p.A0.rows() != p.A1.rows() || p.A0.cols() != p.A1.cols())
            throw std::invalid_argument("path spec: endpoint shape mismatch");
        return p;
    }
    throw std::invalid_argument("module spec: unknown kind '" + kind + "'");
}

ModuleSpec load_module_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open module spec: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_module(ss.str());
}

std::string save_module(const fred::EvenFredholmModule& m) {
    nlohmann::ordered_json j;
    j["kind"] = "even";
    j["dim_plus"] = m.dim_plus;
    j["dim_minus"] = m.dim_minus;
    j["D"] = matrix_to_json(m.D);
    nlohmann::ordered_json alg;
    for (const auto& [name, mat] : m.algebra) alg[name] = matrix_to_json(mat);
    j["algebra"] = alg;
    j["epsilon"] = m.epsilon;
    return j.dump(2);
}

std::string save_module(const fred::OddFredholmModule& m) {
    nlohmann::ordered_json j;
    j["kind"] = "odd";
    j["D"] = matrix_to_json(m.D);
    j["g"] = matrix_to_json(m.g);
    j["c"] = m.derivation_constant;
    return j.dump(2);
}

fred::EvenFredholmModule builtin_even(const std::string& name, std::uint64_t seed) {
    if (name == "index1") {
        // H+ = C^2, H- = C^1, D with off-diagonal block B = (1,0)^t
        fred::EvenFredholmModule m;
        m.dim_plus = 2;
        m.dim_minus = 1;
        m.D = fred::Mat::Zero(3, 3);
        m.D(0, 2) = 1.0;
        m.D(2, 0) = 1.0;
        m.algebra["p"] = fred::Mat::Identity(3, 3);
        m.validate();
        return m;
    }
    if (name == "index0") {
        // balanced: H+ = H- = C^1, antidiagonal b
        fred::EvenFredholmModule m;
        m.dim_plus = 1;
        m.dim_minus = 1;
        m.D = fred::Mat::Zero(2, 2);
        m.D(0, 1) = 1.0;
        m.D(1, 0) = 1.0;
        m.algebra["p"] = fred::Mat::Identity(2, 2);
        m.validate();
        return m;
    }
    if (name == "random-commuting") {
        // block-diagonal: an index-1 block plus a balanced random block; the
        // projection onto the first block commutes with D
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> uni(0.5, 1.5);
        fred::EvenFredholmModule m;
        m.dim_plus = 3;  // 2 (block a) + 1 (block b)
        m.dim_minus = 2;  // 1 (block a) + 1 (block b)
        // ordering: H+ = (a+, a+, b+), H- = (a-, b-)
        m.D = fred::Mat::Zero(5, 5);
        // block a: plus indices {0,1}, minus index {3}; off-diag block (1,0)^t
        m.D(0, 3) = 1.0;
        m.D(3, 0) = 1.0;
        // block b: plus {2}, minus {4}; random coupling
        double w = uni(rng);
        m.D(2, 4) = w;
        m.D(4, 2) = w;
        fred::Mat p = fred::Mat::Zero(5, 5);
        p(0, 0) = p(1, 1) = p(3, 3) = 1.0;  // projection onto block a
        m.algebra["p"] = p;
        m.validate();
        return m;
    }
    throw std::invalid_argument("unknown builtin even module '" + name + "'");
}

fred::OddFredholmModule builtin_odd(const std::string& name) {
    if (name == "odd-conj") {
        fred::OddFredholmModule m;
        m.dim_ = 2;
        m.D = fred::Mat::Zero(2, 2);
        m.D(0, 0) = -1.0;
        m.D(1, 1) = 2.0;
        m.g = fred::Mat::Zero(2, 2);
        m.g(0, 1) = 1.0;
        m.g(1, 0) = 1.0;
        m.derivation_constant = 6.0;
        m.validate();
        return m;
    }
    if (name == "odd-commuting") {
        fred::OddFredholmModule m;
        m.dim_ = 2;
        m.D = fred::Mat::Zero(2, 2);
        m.D(0, 0) = -1.0;
        m.D(1, 1) = 2.0;
        m.g = fred::Mat::Zero(2, 2);
        m.g(0, 0) = fred::cplx(0.0, 1.0);  // diagonal unitary commutes with D
        m.g(1, 1) = fred::cplx(std::sqrt(0.5), std::sqrt(0.5));
        m.derivation_constant = 0.0;
        m.validate();
        return m;
    }
    throw std::invalid_argument("unknown builtin odd module '" + name + "'");
}

PathSpec builtin_path(const std::string& name) {
    if (name == "generic") {
        PathSpec p;
        p.A0 = fred::Mat::Zero(2, 2);
        p.A0(0, 0) = -1.0;
        p.A0(1, 1) = 2.0;
        p.A1 = fred::Mat::Zero(2, 2);
        p.A1(0, 0) = 1.0;
        p.A1(1, 1) = 2.0;
        return p;
    }
    throw std::invalid_argument("unknown builtin path '" + name + "'");
}

fred::Mat builtin_idempotent(const fred::EvenFredholmModule& m) {
    auto it = m.algebra.find("p");
    if (it == m.algebra.end())
        throw std::invalid_argument("module has no algebra element named 'p'");
    return it->second;
}

growth::GrowthSequence load_growth_profile(const std::string& json_text, int max_index) {
    json j = json::parse(json_text);
    std::string kind = j.value("kind", "");
    if (j.contains("terms") || kind == "tabulated") {
        const json& src = j.contains("terms") ? j : j.at("params");
        auto terms = src.at("terms").get<std::vector<double>>();
        return growth::GrowthSequence::tabulated(j.value("label", "tabulated"), terms);
    }
    if (kind != "factorial_ratio")
        throw std::invalid_argument("growth profile: expected terms or kind=factorial_ratio");
    growth::GeneratorSpec spec;
    spec.label = j.value("label", "factorial_ratio");
    auto parse_atoms = [](const json& arr) {
        std::vector<growth::GeneratorAtom> atoms;
        for (const auto& a : arr) {
            growth::GeneratorAtom at;
            std::string type = a.at("type").get<std::string>();
            if (type == "factorial") at.kind = growth::GeneratorAtom::Kind::Factorial;
            else if (type == "power") at.kind = growth::GeneratorAtom::Kind::Power;
            else if (type == "linear") at.kind = growth::GeneratorAtom::Kind::Linear;
            else if (type == "constant") at.kind = growth::GeneratorAtom::Kind::Constant;
            else throw std::invalid_argument("growth profile: unknown atom type " + type);
            at.a = a.value("a", 1.0);
            at.b = a.value("b", 0.0);
            atoms.push_back(at);
        }
        return atoms;
    };
    const auto& params = j.at("params");
    if (params.contains("num")) spec.num = parse_atoms(params.at("num"));
    if (params.contains("den")) spec.den = parse_atoms(params.at("den"));
    return growth::make_generated(spec, max_index);
}

}  // namespace asymcyc::io
