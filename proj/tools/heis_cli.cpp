// Command-line interface for the Heisenberg symbol engine: star products,
// residues, Radul cocycles, index pairings, Mehler/Todd brackets, Dirac
// squares and seeded verification suites. Exit codes: 0 success,
// 1 verification failures, 2 parse error, 3 domain error.

#include "heis/dirac.hpp"
#include "heis/io.hpp"
#include "heis/numeric.hpp"
#include "heis/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace heis;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::ParseError, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void print_scalar(const ExactScalar& v, bool numeric, unsigned digits) {
    std::cout << v.to_string() << "\n";
    if (numeric) std::cout << "numeric: " << format_complex(numeric_eval(v, digits), digits) << "\n";
}

EpsMatrix parse_matrix(const std::string& text, int modulus, int trunc) {
    Json j = parse_text(text);
    if (!j.is_array() || j.empty()) fail(ErrorKind::ParseError, "matrix must be a nonempty array");
    size_t n = j.size();
    EpsMatrix R(n, std::vector<EpsSeries>(n, EpsSeries(modulus, trunc)));
    for (size_t i = 0; i < n; ++i) {
        if (j[i].size() != n) fail(ErrorKind::ParseError, "matrix must be square");
        for (size_t k = 0; k < n; ++k) {
            Rational q = j[i][k].is_string() ? parse_rational(j[i][k].get<std::string>())
                                             : Rational(j[i][k].get<long>());
            EpsSeries e(modulus, trunc);
            e.set(1, ExactScalar::from_rational(modulus, q));
            R[i][k] = e;
        }
    }
    return R;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"heis: exact Heisenberg pseudodifferential symbol engine"};
    app.require_subcommand(1);

    unsigned digits = 20;
    bool numeric = false;

    auto* star_cmd = app.add_subcommand("star", "star product of two symbol documents");
    std::string star_a, star_b, star_out;
    int star_floor = INT32_MIN;
    star_cmd->add_option("a", star_a)->required();
    star_cmd->add_option("b", star_b)->required();
    star_cmd->add_option("--floor", star_floor, "truncate inputs to this degree first");
    star_cmd->add_option("--out", star_out, "output file (default stdout)");

    auto* res_cmd = app.add_subcommand("residue", "Wodzicki residue of a symbol document");
    std::string res_a;
    res_cmd->add_option("a", res_a)->required();
    res_cmd->add_flag("--numeric", numeric);
    res_cmd->add_option("--digits", digits);

    auto* radul_cmd = app.add_subcommand("radul", "equivariant Radul cocycle of two crossed documents");
    std::string radul_a, radul_b, radul_group;
    radul_cmd->add_option("a", radul_a)->required();
    radul_cmd->add_option("b", radul_b)->required();
    radul_cmd->add_option("--group", radul_group, "group file (validates the elements used)");
    radul_cmd->add_flag("--numeric", numeric);
    radul_cmd->add_option("--digits", digits);

    auto* pair_cmd = app.add_subcommand("pairing", "1-D fundamental-class pairing");
    std::string pair_a, pair_b;
    pair_cmd->add_option("a", pair_a)->required();
    pair_cmd->add_option("b", pair_b)->required();
    pair_cmd->add_flag("--numeric", numeric);
    pair_cmd->add_option("--digits", digits);

    auto* toep_cmd = app.add_subcommand("toeplitz", "Toeplitz index oracle on the + sphere component");
    std::string toep_a;
    int cutoff = 48;
    toep_cmd->add_option("a", toep_a)->required();
    toep_cmd->add_option("--cutoff", cutoff);

    auto* mehler_cmd = app.add_subcommand("mehler", "Mehler bracket <exp(Delta + p R dp)> vs Todd series");
    std::string mehler_R;
    int eps_order = 4;
    int mehler_modulus = 8;
    mehler_cmd->add_option("--R", mehler_R, "square rational matrix, JSON rows")->required();
    mehler_cmd->add_option("--eps-order", eps_order);
    mehler_cmd->add_option("--modulus", mehler_modulus);

    auto* dirac_cmd = app.add_subcommand("dirac", "square a Dirac descriptor and classify");
    std::string dirac_file;
    int dirac_order = 3;
    dirac_cmd->add_option("descriptor", dirac_file)->required();
    dirac_cmd->add_option("--eps-order", dirac_order);

    auto* trs_cmd = app.add_subcommand("trs", "canonical supertrace reduction Tr_s vs wres");
    std::string trs_a, trs_b;
    trs_cmd->add_option("a0", trs_a)->required();
    trs_cmd->add_option("a1", trs_b)->required();

    auto* oracle_cmd = app.add_subcommand("oracle", "annulus cubature vs exact sphere moment");
    std::string oracle_gamma = "0";
    std::string oracle_shape = "1,0";
    double tol = 1e-8;
    int oracle_modulus = 8;
    oracle_cmd->add_option("--gamma", oracle_gamma, "comma-separated multi-index");
    oracle_cmd->add_option("--shape", oracle_shape, "v,h");
    oracle_cmd->add_option("--tol", tol);
    oracle_cmd->add_option("--modulus", oracle_modulus);

    auto* verify_cmd = app.add_subcommand("verify", "run seeded property suites");
    std::string suite = "all", report_out;
    uint64_t seed = 0;
    int case_limit = 0;
    bool inject_bad = false;
    verify_cmd->add_option("--suite", suite, "all|symbols|residue|crossed|opalg");
    verify_cmd->add_option("--seed", seed);
    verify_cmd->add_option("--cases", case_limit, "cap per-block case counts (0 = spec defaults)");
    verify_cmd->add_option("--out", report_out, "write the JSON report here");
    verify_cmd->add_flag("--inject-bad-convention", inject_bad,
                         "negative control: force a wrong residue normalization");

    CLI11_PARSE(app, argc, argv);

    if (star_cmd->parsed()) {
        HSymbol a = symbol_from_json(parse_text(slurp(star_a)));
        HSymbol b = symbol_from_json(parse_text(slurp(star_b)));
        if (star_floor != INT32_MIN) {
            a = a.truncated(star_floor);
            b = b.truncated(star_floor);
        }
        Json out = symbol_to_json(star(a, b));
        if (star_out.empty())
            std::cout << out.dump(2) << "\n";
        else
            write_text_file(star_out, out.dump(2) + "\n");
        return 0;
    }
    if (res_cmd->parsed()) {
        print_scalar(wres(symbol_from_json(parse_text(slurp(res_a)))), numeric, digits);
        return 0;
    }
    if (radul_cmd->parsed()) {
        CrossedSymbol A = crossed_from_json(parse_text(slurp(radul_a)));
        CrossedSymbol B = crossed_from_json(parse_text(slurp(radul_b)));
        if (!radul_group.empty()) {
            Json g = parse_text(slurp(radul_group));  // validated by construction
            for (const auto& e : g.at("elements")) isometry_from_json(e, A.shape(), A.modulus());
        }
        print_scalar(radul_cocycle(A, B), numeric, digits);
        return 0;
    }
    if (pair_cmd->parsed()) {
        HSymbol a = symbol_from_json(parse_text(slurp(pair_a)));
        HSymbol b = symbol_from_json(parse_text(slurp(pair_b)));
        print_scalar(fundamental_pairing_1d(a, b), numeric, digits);
        return 0;
    }
    if (toep_cmd->parsed()) {
        HSymbol a = symbol_from_json(parse_text(slurp(toep_a)));
        std::cout << toeplitz_index_oracle_1d(a, cutoff) << "\n";
        return 0;
    }
    if (mehler_cmd->parsed()) {
        EpsMatrix R = parse_matrix(mehler_R, mehler_modulus, eps_order);
        EpsSeries got = mehler_bracket(R, eps_order);
        EpsSeries todd = todd_series(R, eps_order);
        for (int k = 0; k <= eps_order; ++k)
            std::cout << "eps^" << k << ": " << got[k].to_string() << "\n";
        std::cout << (got == todd ? "matches Todd series" : "MISMATCH with Todd series") << "\n";
        return got == todd ? 0 : 1;
    }
    if (dirac_cmd->parsed()) {
        Json j = parse_text(slurp(dirac_file));
        DiracDescriptor d;
        const Json& sh = j.at("shape");
        d.shape = FoliationShape(sh.at("v").get<int>(), sh.at("h").get<int>());
        d.modulus = j.at("modulus").get<int>();
        std::string kind = j.at("kind").get<std::string>();
        const int n = d.shape.n();
        if (kind == "deRham") {
            d.kind = DiracDescriptor::DeRham;
        } else if (kind == "affine") {
            d.kind = DiracDescriptor::Affine;
            d.christoffel.shape = d.shape;
            d.christoffel.modulus = d.modulus;
            d.christoffel.gamma.assign(
                n, std::vector(n, std::vector<FourierFunction>(n, FourierFunction::zero(n, d.modulus))));
            for (const auto& e : j.at("christoffel")) {
                int k = e.at("k").get<int>() - 1, i = e.at("i").get<int>() - 1,
                    jj = e.at("j").get<int>() - 1;
                FourierFunction f(n, d.modulus);
                for (const auto& fc : e.at("coeff")) {
                    FourierFunction::Mode mode;
                    for (const auto& x : fc.at("k")) mode.push_back(x.get<int>());
                    f.add_coeff(mode,
                                ExactScalar::from_rational(d.modulus,
                                                           parse_rational(fc.at("value").get<std::string>())));
                }
                d.christoffel.gamma[k][i][jj] = f;
                d.christoffel.gamma[k][jj][i] = f;
            }
        } else {
            fail(ErrorKind::ParseError, "kind must be deRham or affine");
        }
        OpSeries mD2 = dirac_square(d, dirac_order);
        bool gl = is_generalized_laplacian(mD2);
        Json out;
        out["generalizedLaplacian"] = gl;
        if (d.kind == DiracDescriptor::Affine) {
            auto slot = extract_curvature_slot(mD2);
            auto curv = curvature_tensor(d.christoffel);
            bool match = true;
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    for (int i = 0; i < n; ++i)
                        for (int jj = i + 1; jj < n; ++jj)
                            match = match && slot[k][l][i][jj] == curv[k][l][i][jj];
            out["lichnerowiczMatch"] = match;
        }
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    if (trs_cmd->parsed()) {
        HSymbol s0 = symbol_from_json(parse_text(slurp(trs_a)));
        HSymbol s1 = symbol_from_json(parse_text(slurp(trs_b)));
        const FoliationShape shape = s0.shape();
        const int n = shape.n();
        const int modulus = s0.modulus();
        int trunc = n + 2;
        GeneralizedLaplacian delta = flat_laplacian(shape, modulus, trunc);
        HSymbol integrand = star(s0, log_commutator(s1));
        OpSeries pert(shape, modulus, trunc);
        for (int i = 0; i < n; ++i)
            pert.add(OpKey{{}, mi_zero(n), mi_unit(n, i), 1},
                     HSymbol::term(shape, FourierFunction::one(n, modulus), mi_unit(n, i), 0, 0, {}));
        TraceClassElement heat = duhamel_exp(delta, pert);
        OpSeries top_word(shape, modulus, trunc);
        top_word.add(OpKey{CliffordWord::top(n), mi_zero(n), mi_zero(n), n}, HSymbol::one(shape, modulus));
        OpSeries full = op_compose(OpSeries::left_symbol(integrand, trunc),
                                   op_compose(top_word, heat.prefactor));
        ExactScalar lhs = tr_s(TraceClassElement{full});
        ExactScalar rhs = wres(integrand);
        std::cout << "Tr_s: " << lhs.to_string() << "\n";
        std::cout << "wres: " << rhs.to_string() << "\n";
        std::cout << (lhs == rhs ? "reduction identity holds" : "MISMATCH") << "\n";
        return lhs == rhs ? 0 : 1;
    }
    if (oracle_cmd->parsed()) {
        auto parse_ints = [](const std::string& s) {
            std::vector<int> out;
            std::stringstream ss(s);
            std::string tok;
            while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
            return out;
        };
        auto sh = parse_ints(oracle_shape);
        if (sh.size() != 2) fail(ErrorKind::ParseError, "--shape wants v,h");
        FoliationShape shape(sh[0], sh[1]);
        auto gi = parse_ints(oracle_gamma);
        if (static_cast<int>(gi.size()) != shape.n())
            fail(ErrorKind::ParseError, "--gamma length must be v+h");
        MultiIndex gamma;
        for (int x : gi) gamma.push_back(static_cast<uint16_t>(x));
        ExactScalar exact = sphere_moment(gamma, shape, oracle_modulus);
        double cub = annulus_oracle(gamma, shape, tol);
        double ex = numeric_eval_d(exact).real();
        std::cout << "exact:    " << exact.to_string() << " = " << ex << "\n";
        std::cout << "cubature: " << cub << "\n";
        std::cout << "difference: " << std::abs(ex - cub) << "\n";
        return 0;
    }
    if (verify_cmd->parsed()) {
        SuiteOptions opt;
        opt.seed = seed;
        opt.case_limit = case_limit;
        opt.inject_bad_convention = inject_bad;
        VerificationReport rep = run_suite(suite, opt);
        Json out = rep.to_json();
        std::cout << out.dump(2) << "\n";
        if (!report_out.empty()) write_text_file(report_out, out.dump(2) + "\n");
        return rep.failures.empty() ? 0 : 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::ParseError ? 2 : 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
