// Command-line driver: enumeration, descent tables, dyadic lifts, the
// Hopf-morphism expansion, the translation action, and verification reports.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "roughforge/serialize.hpp"
#include "roughforge/signature.hpp"

namespace rf = roughforge;
using rf::Json;
using rf::Rational;

namespace {

struct NamedError : std::runtime_error {
    std::string name;
    NamedError(std::string n, const std::string& msg) : std::runtime_error(msg), name(std::move(n)) {}
};

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw NamedError("input_unreadable", "cannot open " + path);
    Json j;
    in >> j;
    return j;
}

void save_json(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw NamedError("output_unwritable", "cannot open " + path);
    out << j.dump(1) << "\n";
}

void emit(const Json& j, bool pretty) { std::cout << j.dump(pretty ? 1 : -1) << "\n"; }

rf::BuildConfig make_config(const std::string& split_weight, const std::string& z_init_path,
                            bool serial) {
    rf::BuildConfig cfg;
    cfg.split_weight = Rational::parse(split_weight);
    if (cfg.split_weight < Rational(0) || cfg.split_weight > Rational(1))
        throw NamedError("split_weight_range", "split weight must lie in [0,1]");
    cfg.policy = serial ? rf::ExecPolicy::serial : rf::ExecPolicy::parallel;
    if (!z_init_path.empty()) {
        Json z = load_json(z_init_path);
        for (auto it = z.begin(); it != z.end(); ++it) {
            int level = std::stoi(it.key());
            for (auto e = it.value().begin(); e != it.value().end(); ++e)
                cfg.z_init[level][e.key()] = e.value().is_string()
                                                 ? rf::parse_double(e.value().get<std::string>())
                                                 : e.value().get<double>();
        }
    }
    return cfg;
}

rf::Rational parse_gamma(const std::string& s) {
    Rational g = Rational::parse(s);
    if (!(Rational(0) < g && g < Rational(1)))
        throw NamedError("gamma_range", "gamma must lie in (0,1)");
    return g;
}

int run(int argc, char** argv) {
    CLI::App app{"roughforge: dyadic rough-path construction and translation toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    bool pretty = false;
    app.add_flag("--pretty", pretty, "human-readable output");

    // trees
    auto* sc_trees = app.add_subcommand("trees", "enumerate decorated rooted trees");
    int tn = 3, td = 1;
    bool tzero = false;
    sc_trees->add_option("--n", tn, "maximum node count")->required();
    sc_trees->add_option("--d", td, "number of decorations")->required();
    sc_trees->add_flag("--with-zero", tzero, "include the 0 decoration");

    // bch
    auto* sc_bch = app.add_subcommand("bch", "descent-coefficient tables and BCH evaluation");
    int bk = 3;
    std::string b_alpha, b_beta, b_algebra = "bck", b_gamma = "2/5";
    int b_N = 0, b_d = 2;
    sc_bch->add_option("--k", bk, "table order (1..6)")->required();
    sc_bch->add_option("--alpha", b_alpha, "JSON functional for evaluation");
    sc_bch->add_option("--beta", b_beta, "JSON functional for evaluation");
    sc_bch->add_option("--N", b_N, "truncation for evaluation");
    sc_bch->add_option("--d", b_d, "letters for evaluation");
    sc_bch->add_option("--gamma", b_gamma, "exponent p/q for the evaluation basis");
    sc_bch->add_option("--algebra", b_algebra, "bck | shuffle");

    // lift
    auto* sc_lift = app.add_subcommand("lift", "build a rough path over sampled data");
    std::string l_input, l_out, l_report, l_gamma, l_gammas, l_algebra = "bck";
    std::string l_split = "1/2", l_zinit;
    int l_N = 0;
    bool l_serial = false;
    sc_lift->add_option("--input", l_input, "CSV path samples")->required();
    sc_lift->add_option("--gamma", l_gamma, "exponent p/q (isotropic)");
    sc_lift->add_option("--gammas", l_gammas, "comma-separated exponents (anisotropic)");
    sc_lift->add_option("--N", l_N, "truncation override (default floor(1/gamma))");
    sc_lift->add_option("--algebra", l_algebra, "bck | shuffle | aniso")->required();
    sc_lift->add_option("--out", l_out, "output JSON")->required();
    sc_lift->add_option("--report", l_report, "Holder report JSON");
    sc_lift->add_option("--split-weight", l_split, "halving weight in [0,1]");
    sc_lift->add_option("--z-init", l_zinit, "per-level initial correction JSON");
    bool l_zero = false;
    sc_lift->add_flag("--with-zero", l_zero,
                      "first CSV letter carries the reserved 0 decoration (bck only)");
    sc_lift->add_flag("--serial", l_serial, "serial kernels");

    // psi
    auto* sc_psi = app.add_subcommand("psi", "expand a tree through the Hopf morphism");
    std::string p_tree;
    int p_N = 0, p_d = 0;
    sc_psi->add_option("--tree", p_tree, "tree in bracket grammar")->required();
    sc_psi->add_option("--N", p_N, "alphabet truncation (default |tree|)");
    sc_psi->add_option("--d", p_d, "decorations (default max in tree)");

    // act
    auto* sc_act = app.add_subcommand("act", "translate a branched rough path by a family");
    std::string a_rp, a_g, a_out, a_split = "1/2", a_zinit;
    bool a_serial = false;
    sc_act->add_option("--rp", a_rp, "branched rough path JSON")->required();
    sc_act->add_option("--g", a_g, "Holder family JSON")->required();
    sc_act->add_option("--out", a_out, "output JSON")->required();
    sc_act->add_option("--split-weight", a_split, "halving weight");
    sc_act->add_option("--z-init", a_zinit, "per-level initial correction JSON");
    sc_act->add_flag("--serial", a_serial, "serial kernels");

    // solve
    auto* sc_solve = app.add_subcommand("solve", "recover the translation between two paths");
    std::string s_rp, s_rp2, s_out, s_split = "1/2", s_zinit;
    bool s_serial = false;
    sc_solve->add_option("--rp", s_rp, "source path JSON")->required();
    sc_solve->add_option("--rp2", s_rp2, "target path JSON")->required();
    sc_solve->add_option("--out", s_out, "family output JSON")->required();
    sc_solve->add_option("--split-weight", s_split, "halving weight");
    sc_solve->add_option("--z-init", s_zinit, "per-level initial correction JSON");
    sc_solve->add_flag("--serial", s_serial, "serial kernels");

    // bcfp
    auto* sc_bcfp = app.add_subcommand("bcfp", "translate by a constant character");
    std::string f_rp, f_v, f_out, f_gout, f_split = "1/2";
    bool f_serial = false;
    sc_bcfp->add_option("--rp", f_rp, "branched path JSON (alphabet with 0)")->required();
    sc_bcfp->add_option("--v", f_v, "constant character JSON")->required();
    sc_bcfp->add_option("--out", f_out, "translated path JSON");
    sc_bcfp->add_option("--g-out", f_gout, "equivalent family JSON");
    sc_bcfp->add_option("--split-weight", f_split, "halving weight");
    sc_bcfp->add_flag("--serial", f_serial, "serial kernels");

    // verify
    auto* sc_verify = app.add_subcommand("verify", "check Chen, character and Holder bounds");
    std::string v_rp;
    bool v_full = false;
    double v_chen_tol = 1e-10, v_char_tol = 1e-10;
    sc_verify->add_option("--rp", v_rp, "path JSON")->required();
    sc_verify->add_flag("--full-triples", v_full, "check all dyadic triples (cubic cost)");
    sc_verify->add_option("--chen-tol", v_chen_tol, "relative Chen tolerance");
    sc_verify->add_option("--char-tol", v_char_tol, "character tolerance");

    CLI11_PARSE(app, argc, argv);

    if (*sc_trees) {
        if (tn < 1 || td < 1) throw NamedError("enumeration_range", "need n >= 1 and d >= 1");
        auto trees = rf::enumerate_trees(tn, td, tzero);
        if (pretty) {
            for (const auto& t : trees) std::cout << t.str() << "\n";
            std::cout << trees.size() << " trees\n";
        } else {
            Json j = Json::array();
            for (const auto& t : trees) j.push_back(t.str());
            emit(j, false);
        }
        return 0;
    }

    if (*sc_bch) {
        const auto& rows = rf::descent_coefficients(bk);
        if (b_alpha.empty()) {
            // CSV: order, one-line permutation, descents, coefficient
            std::cout << "k,permutation,descents,a\n";
            for (const auto& row : rows) {
                std::cout << bk << ",";
                for (std::size_t i = 0; i < row.perm.size(); ++i)
                    std::cout << row.perm[i];
                std::cout << "," << row.descents << "," << row.a.str() << "\n";
            }
            return 0;
        }
        if (b_beta.empty()) throw NamedError("missing_beta", "--beta required with --alpha");
        Rational gamma = parse_gamma(b_gamma);
        int N = b_N > 0 ? b_N : static_cast<int>(gamma.floor_inverse());
        rf::BasisPtr basis =
            b_algebra == "bck"
                ? rf::TruncatedBasis::make_forests(N, b_d, gamma)
                : rf::TruncatedBasis::make_words(rf::Alphabet::integers(b_d, gamma), N);
        auto alpha = rf::dual_from_json(basis, load_json(b_alpha));
        auto beta = rf::dual_from_json(basis, load_json(b_beta));
        auto out = rf::bch(alpha, beta, N);
        emit(rf::dual_to_json(out), pretty);
        return 0;
    }

    if (*sc_lift) {
        std::ifstream in(l_input);
        if (!in) throw NamedError("input_unreadable", "cannot open " + l_input);
        rf::SampledPath path = rf::sampled_path_from_csv(in);
        if (path.depth > 14) throw NamedError("depth_range", "depth above 14 is not supported");
        rf::BuildConfig cfg = make_config(l_split, l_zinit, l_serial);
        rf::DyadicGroupPath rp;
        if (l_algebra == "aniso") {
            if (l_gammas.empty())
                throw NamedError("missing_gammas", "--gammas required for the anisotropic lift");
            std::stringstream ss(l_gammas);
            std::string cell;
            path.alphabet.gammas.clear();
            while (std::getline(ss, cell, ',')) path.alphabet.gammas.push_back(parse_gamma(cell));
            if (static_cast<int>(path.alphabet.gammas.size()) != path.alphabet.size())
                throw NamedError("gamma_count", "one exponent per CSV letter is required");
            rp = rf::build_anisotropic(path, cfg);
        } else {
            if (l_gamma.empty()) throw NamedError("missing_gamma", "--gamma required");
            Rational gamma = parse_gamma(l_gamma);
            path.alphabet.gammas.assign(path.alphabet.size(), gamma);
            int N = l_N > 0 ? l_N : static_cast<int>(gamma.floor_inverse());
            if (l_zero) {
                if (l_algebra != "bck")
                    throw NamedError("zero_requires_bck",
                                     "--with-zero applies to the forest algebra only");
                rf::require_gamma_valid(gamma);
                auto basis = rf::TruncatedBasis::make_forests(
                    N, path.alphabet.size() - 1, gamma, true);
                rp = rf::build_rough_path(path, basis, cfg);
            } else {
                auto kind = l_algebra == "bck" ? rf::TruncatedBasis::Kind::forests
                                               : rf::TruncatedBasis::Kind::words;
                rp = rf::build_isotropic(path, gamma, N, kind, cfg);
            }
        }
        save_json(l_out, rf::path_to_json(rp));
        if (!l_report.empty()) save_json(l_report, rf::report_to_json(rf::holder_report(rp)));
        return 0;
    }

    if (*sc_psi) {
        rf::DecoratedTree tree = rf::parse_tree(p_tree);
        int N = p_N > 0 ? p_N : tree.size();
        int d = p_d;
        if (d == 0) {
            std::vector<const rf::DecoratedTree*> stack{&tree};
            while (!stack.empty()) {
                const auto* t = stack.back();
                stack.pop_back();
                d = std::max(d, t->decoration());
                for (const auto& c : t->children()) stack.push_back(&c);
            }
        }
        if (tree.size() > N) throw NamedError("size_overflow", "tree exceeds the truncation");
        rf::HairerKelly hk(N, d);
        rf::Alphabet an = hk.alphabet(Rational(1, 2 * N));
        const auto& combo = hk.psi_tree(tree);
        if (pretty) {
            for (const auto& [w, c] : combo.terms())
                std::cout << c.str() << " * " << rf::word_str(an, w) << "\n";
        } else {
            Json j = Json::object();
            for (const auto& [w, c] : combo.terms()) j[rf::word_str(an, w)] = c.str();
            emit(j, false);
        }
        return 0;
    }

    auto load_branched = [&](const std::string& path) {
        rf::DyadicGroupPath x = rf::path_from_json(load_json(path));
        if (x.basis->kind() != rf::TruncatedBasis::Kind::forests)
            throw NamedError("not_branched", "a branched (bck) path is required");
        return x;
    };
    auto hk_for = [](const rf::DyadicGroupPath& x) {
        return rf::HairerKelly(x.basis->max_degree(), x.basis->decorations(),
                               x.basis->zero_decorated());
    };

    if (*sc_act) {
        auto x = load_branched(a_rp);
        rf::HolderFamily g = rf::family_from_json(load_json(a_g));
        rf::BuildConfig cfg = make_config(a_split, a_zinit, a_serial);
        rf::HairerKelly hk = hk_for(x);
        save_json(a_out, rf::path_to_json(rf::act(g, x, hk, cfg)));
        return 0;
    }

    if (*sc_solve) {
        auto x = load_branched(s_rp);
        auto x2 = load_branched(s_rp2);
        rf::BuildConfig cfg = make_config(s_split, s_zinit, s_serial);
        rf::HairerKelly hk = hk_for(x);
        auto sol = rf::solve_translation(x, x2, hk, cfg);
        Json j = rf::family_to_json(sol.g);
        j["delta_residual"] = rf::double_str(sol.max_delta_residual);
        save_json(s_out, j);
        return 0;
    }

    if (*sc_bcfp) {
        auto x = load_branched(f_rp);
        rf::ConstantCharacter v = rf::character_from_json(load_json(f_v));
        rf::BuildConfig cfg = make_config(f_split, "", f_serial);
        auto mv = rf::bcfp_translate(x, v);
        if (!f_out.empty()) save_json(f_out, rf::path_to_json(mv));
        if (!f_gout.empty()) {
            rf::HairerKelly hk = hk_for(x);
            auto sol = rf::bcfp_to_action(x, v, hk, cfg);
            Json j = rf::family_to_json(sol.g);
            j["delta_residual"] = rf::double_str(sol.max_delta_residual);
            save_json(f_gout, j);
        }
        if (f_out.empty() && f_gout.empty())
            throw NamedError("missing_output", "--out or --g-out is required");
        return 0;
    }

    if (*sc_verify) {
        rf::DyadicGroupPath x = rf::path_from_json(load_json(v_rp));
        bool full = v_full && x.points() <= 260;
        auto chen = rf::chen_check(x, full);
        double chr = rf::character_residual(x);
        auto rep = rf::holder_report(x);
        bool z_ok = true;
        for (const auto& d : x.diagnostics) z_ok = z_ok && d.recursion_bounded;
        bool chen_ok = chen.max_rel_residual <= v_chen_tol;
        bool char_ok = chr <= v_char_tol;
        bool hold_ok = rep.all_finite();

        std::cout << (chen_ok ? "PASS" : "FAIL") << " chen residual "
                  << rf::double_str(chen.max_rel_residual) << " over " << chen.triples
                  << (full ? " triples (all)" : " triples (anchored)") << "\n";
        std::cout << (char_ok ? "PASS" : "FAIL") << " character residual " << rf::double_str(chr)
                  << "\n";
        std::cout << (hold_ok ? "PASS" : "FAIL") << " holder constants finite\n";
        std::cout << (z_ok ? "PASS" : "FAIL") << " correction recursion bounded\n";
        if (pretty) {
            Json j = rf::report_to_json(rep);
            std::cout << j.dump(1) << "\n";
        }
        return (chen_ok && char_ok && hold_ok && z_ok) ? 0 : 1;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const NamedError& e) {
        Json err;
        err["error"] = e.name;
        err["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        Json err;
        err["error"] = "invalid_input";
        err["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 1;
    }
}
