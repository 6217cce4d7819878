#include "roughforge/serialize.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace roughforge {

std::string double_str(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& s) {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("malformed number: " + s);
    return v;
}

namespace {

std::string unit_key(const TruncatedBasis& b) {
    return b.kind() == TruncatedBasis::Kind::forests ? "1" : "";
}

}  // namespace

Json dual_to_json(const DualElement<double>& f) {
    Json j = Json::object();
    if (f.unit != 0.0) j[unit_key(*f.basis)] = double_str(f.unit);
    for (int i = 0; i < f.basis->size(); ++i)
        if (f.coeffs[i] != 0.0) j[f.basis->name(i)] = double_str(f.coeffs[i]);
    return j;
}

Json dual_to_json(const DualElement<Rational>& f) {
    Json j = Json::object();
    if (!f.unit.is_zero()) j[unit_key(*f.basis)] = f.unit.str();
    for (int i = 0; i < f.basis->size(); ++i)
        if (!f.coeffs[i].is_zero()) j[f.basis->name(i)] = f.coeffs[i].str();
    return j;
}

namespace {

// Accepts plain decimals and "p/q" rational strings.
double parse_scalar(const Json& v) {
    if (!v.is_string()) return v.get<double>();
    const std::string s = v.get<std::string>();
    if (s.find('/') != std::string::npos) return Rational::parse(s).to_double();
    return parse_double(s);
}

}  // namespace

DualElement<double> dual_from_json(BasisPtr basis, const Json& j) {
    DualElement<double> f(basis);
    const std::string ukey = unit_key(*basis);
    for (auto it = j.begin(); it != j.end(); ++it) {
        double value = parse_scalar(it.value());
        if (it.key() == ukey) {
            f.unit = value;
            continue;
        }
        int idx = basis->index_of(it.key());
        if (idx < 0) throw std::invalid_argument("unknown basis element: " + it.key());
        f.coeffs[idx] = value;
    }
    return f;
}

Json path_to_json(const DyadicGroupPath& x) {
    const TruncatedBasis& b = *x.basis;
    Json j;
    j["kind"] = basis_kind_name(b.kind(), b.weight_cap() == Rational(1));
    j["depth"] = x.depth;
    j["N"] = b.max_degree();
    j["level"] = x.level;
    j["config_tag"] = x.config_tag;
    j["split_weight"] = x.split_weight.str();
    if (b.kind() == TruncatedBasis::Kind::forests) {
        j["d"] = b.decorations();
        j["include_zero"] = b.zero_decorated();
        j["gamma"] = b.min_gamma().str();
    } else {
        Json letters = Json::array();
        Json gammas = Json::array();
        for (const auto& n : b.alphabet().names) letters.push_back(n);
        for (const auto& g : b.alphabet().gammas) gammas.push_back(g.str());
        j["letters"] = letters;
        j["gammas"] = gammas;
    }
    Json states = Json::array();
    for (const auto& s : x.states) states.push_back(dual_to_json(s));
    j["states"] = states;

    Json diags = Json::array();
    for (const auto& d : x.diagnostics) {
        Json dj;
        dj["level"] = d.level;
        Json zn = Json::array(), bn = Json::array();
        for (double v : d.z_norms) zn.push_back(double_str(v));
        for (double v : d.bch_norms) bn.push_back(double_str(v));
        dj["z_norms"] = zn;
        dj["bch_norms"] = bn;
        dj["recursion_bounded"] = d.recursion_bounded;
        diags.push_back(dj);
    }
    j["diagnostics"] = diags;
    return j;
}

DyadicGroupPath path_from_json(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const int N = j.at("N").get<int>();
    BasisPtr basis;
    if (kind == "bck") {
        basis = TruncatedBasis::make_forests(N, j.at("d").get<int>(),
                                             Rational::parse(j.at("gamma").get<std::string>()),
                                             j.value("include_zero", false));
    } else {
        Alphabet a;
        for (const auto& n : j.at("letters")) a.names.push_back(n.get<std::string>());
        for (const auto& g : j.at("gammas")) a.gammas.push_back(Rational::parse(g.get<std::string>()));
        a.validate();
        basis = kind == "aniso" ? TruncatedBasis::make_words_anisotropic(a)
                                : TruncatedBasis::make_words(a, N);
    }
    DyadicGroupPath x;
    x.basis = basis;
    x.depth = j.at("depth").get<int>();
    x.level = j.at("level").get<int>();
    x.config_tag = j.value("config_tag", "");
    x.split_weight = Rational::parse(j.value("split_weight", "1/2"));
    for (const auto& s : j.at("states")) x.states.push_back(dual_from_json(basis, s));
    if (static_cast<int>(x.states.size()) != x.points())
        throw std::invalid_argument("state count does not match the depth");
    if (j.contains("diagnostics")) {
        for (const auto& dj : j.at("diagnostics")) {
            LevelDiagnostics d;
            d.level = dj.at("level").get<int>();
            for (const auto& v : dj.at("z_norms")) d.z_norms.push_back(parse_scalar(v));
            for (const auto& v : dj.at("bch_norms")) d.bch_norms.push_back(parse_scalar(v));
            d.recursion_bounded = dj.at("recursion_bounded").get<bool>();
            x.diagnostics.push_back(std::move(d));
        }
    }
    return x;
}

Json family_to_json(const HolderFamily& g) {
    Json j;
    j["depth"] = g.depth;
    Json values = Json::object();
    for (std::size_t i = 0; i < g.trees.size(); ++i) {
        Json col = Json::array();
        for (double v : g.values[i]) col.push_back(double_str(v));
        values[g.trees[i].str()] = col;
    }
    j["values"] = values;
    return j;
}

HolderFamily family_from_json(const Json& j) {
    HolderFamily g;
    g.depth = j.at("depth").get<int>();
    const Json& values = j.at("values");
    for (auto it = values.begin(); it != values.end(); ++it) {
        g.trees.push_back(parse_tree(it.key()));
        std::vector<double> col;
        for (const auto& v : it.value()) col.push_back(parse_scalar(v));
        g.values.push_back(std::move(col));
    }
    // canonical order
    std::vector<std::size_t> order(g.trees.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return tree_less(g.trees[a], g.trees[b]); });
    HolderFamily sorted;
    sorted.depth = g.depth;
    for (std::size_t i : order) {
        sorted.trees.push_back(g.trees[i]);
        sorted.values.push_back(std::move(g.values[i]));
    }
    sorted.validate();
    return sorted;
}

Json report_to_json(const HolderReport& rep) {
    Json j = Json::object();
    for (int i = 0; i < rep.basis->size(); ++i) {
        Json e;
        e["exponent"] = double_str(rep.exponents[i]);
        e["constant"] = double_str(rep.constants[i]);
        j[rep.basis->name(i)] = e;
    }
    return j;
}

ConstantCharacter character_from_json(const Json& j) {
    if (!j.is_object())
        throw std::invalid_argument(
            "character must be a constant object; time-dependent characters are not supported");
    ConstantCharacter v;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!it.value().is_number() && !it.value().is_string())
            throw std::invalid_argument(
                "character values must be constants; time-dependent characters are not supported");
        v.tree_values[it.key()] = parse_scalar(it.value());
    }
    return v;
}

SampledPath sampled_path_from_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty CSV input");
    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) header.push_back(cell);
    }
    if (header.size() < 2 || header[0] != "t")
        throw std::invalid_argument("CSV header must be t,<letter>,...");

    SampledPath p;
    for (std::size_t i = 1; i < header.size(); ++i) p.alphabet.names.push_back(header[i]);
    p.values.assign(header.size() - 1, {});

    std::vector<double> times;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::size_t col = 0;
        while (std::getline(ss, cell, ',')) {
            double v = parse_double(cell);
            if (col == 0)
                times.push_back(v);
            else if (col - 1 < p.values.size())
                p.values[col - 1].push_back(v);
            else
                throw std::invalid_argument("row wider than the header");
            ++col;
        }
        if (col != header.size()) throw std::invalid_argument("row narrower than the header");
    }

    const std::size_t rows = times.size();
    int depth = 0;
    while ((std::size_t(1) << depth) + 1 < rows && depth <= 20) ++depth;
    if ((std::size_t(1) << depth) + 1 != rows)
        throw std::invalid_argument("row count must be 2^M + 1");
    p.depth = depth;
    const int pts = p.points();
    for (int k = 0; k < pts; ++k) {
        double expected = static_cast<double>(k) / (pts - 1);
        if (times[k] != expected)
            throw std::invalid_argument("t column must be the dyadics k/2^M in order");
    }
    return p;
}

void sampled_path_to_csv(const SampledPath& p, std::ostream& out) {
    out << "t";
    for (const auto& n : p.alphabet.names) out << "," << n;
    out << "\n";
    const int pts = p.points();
    for (int k = 0; k < pts; ++k) {
        out << double_str(static_cast<double>(k) / (pts - 1));
        for (const auto& col : p.values) out << "," << double_str(col[k]);
        out << "\n";
    }
}

std::string basis_kind_name(TruncatedBasis::Kind k, bool anisotropic) {
    if (k == TruncatedBasis::Kind::forests) return "bck";
    return anisotropic ? "aniso" : "shuffle";
}

}  // namespace roughforge
