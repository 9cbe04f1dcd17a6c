#include "heis/io.hpp"

#include <fstream>
#include <sstream>

namespace heis {

namespace {

void check_fields(const Json& j, std::initializer_list<const char*> allowed, const char* where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a) ok = true;
        if (!ok) fail(ErrorKind::ParseError, std::string("unknown field '") + it.key() + "' in " + where);
    }
}

Json mode_to_json(const FourierFunction::Mode& k) {
    Json a = Json::array();
    for (int x : k) a.push_back(x);
    return a;
}

FourierFunction::Mode mode_from_json(const Json& j) {
    if (!j.is_array()) fail(ErrorKind::ParseError, "mode must be an array");
    FourierFunction::Mode k;
    for (const auto& x : j) k.push_back(x.get<int>());
    return k;
}

Json set_to_json(uint32_t mask) {
    Json a = Json::array();
    for (int i = 1; i <= 32; ++i)
        if (mask & (1u << (i - 1))) a.push_back(i);
    return a;
}

uint32_t set_from_json(const Json& j) {
    uint32_t m = 0;
    int prev = 0;
    for (const auto& x : j) {
        int i = x.get<int>();
        if (i <= prev) fail(ErrorKind::ParseError, "index sets must be strictly increasing");
        if (i < 1 || i > 32) fail(ErrorKind::ParseError, "Clifford index out of range");
        m |= 1u << (i - 1);
        prev = i;
    }
    return m;
}

}  // namespace

Json scalar_to_json(const ExactScalar& a) {
    Json entries = Json::array();
    for (const auto& [key, cyc] : a.terms()) {
        Json e;
        Json cv = Json::array();
        for (const auto& q : cyc.coeffs()) cv.push_back(to_string(q));
        e["cyclotomic"] = cv;
        e["piHalfExp"] = key.first;
        e["gammaQuarterExp"] = key.second;
        e["rationalCoeff"] = "1";
        entries.push_back(e);
    }
    return entries;
}

ExactScalar scalar_from_json(const Json& j, int modulus) {
    ExactScalar out(modulus);
    for (const auto& e : j) {
        check_fields(e, {"cyclotomic", "piHalfExp", "gammaQuarterExp", "rationalCoeff"}, "scalar entry");
        Cyclotomic c(modulus);
        const auto& cv = e.at("cyclotomic");
        if (static_cast<int>(cv.size()) != euler_phi(modulus))
            fail(ErrorKind::ParseError, "cyclotomic vector length must be phi(modulus)");
        for (size_t k = 0; k < cv.size(); ++k) {
            Rational q = parse_rational(cv[k].get<std::string>());
            if (q != 0) c += Cyclotomic::zeta_pow(modulus, static_cast<long>(k)).scaled(q);
        }
        Rational rc = parse_rational(e.value("rationalCoeff", std::string("1")));
        out += ExactScalar::monomial(c.scaled(rc), e.at("piHalfExp").get<int>(),
                                     e.at("gammaQuarterExp").get<int>());
    }
    return out;
}

Json symbol_to_json(const HSymbol& a) {
    Json j;
    j["formatVersion"] = 1;
    j["shape"] = Json{{"v", a.shape().v}, {"h", a.shape().h}};
    j["modulus"] = a.modulus();
    j["top"] = a.top();
    if (a.floor())
        j["floor"] = *a.floor();
    else
        j["floor"] = nullptr;
    Json terms = Json::array();
    for (const auto& [d, comp] : a.components()) {
        for (const auto& [key, coeff] : comp) {
            Json t;
            t["degree"] = d;
            Json g = Json::array();
            for (auto x : key.gamma) g.push_back(static_cast<int>(x));
            t["gamma"] = g;
            t["rhoQuarter"] = key.rhoQuarter;
            t["logPow"] = static_cast<int>(key.logPow);
            t["psiSet"] = set_to_json(key.word.psi);
            t["psiBarSet"] = set_to_json(key.word.psiBar);
            Json fc = Json::array();
            for (const auto& [mode, c] : coeff.coeffs()) {
                for (const auto& entry : scalar_to_json(c)) {
                    Json e;
                    e["k"] = mode_to_json(mode);
                    for (auto it = entry.begin(); it != entry.end(); ++it) e[it.key()] = it.value();
                    fc.push_back(e);
                }
            }
            t["fourierCoeffs"] = fc;
            terms.push_back(t);
        }
    }
    j["terms"] = terms;
    return j;
}

HSymbol symbol_from_json(const Json& j) {
    check_fields(j, {"formatVersion", "shape", "modulus", "top", "floor", "terms"}, "symbol document");
    if (j.at("formatVersion").get<int>() != 1) fail(ErrorKind::ParseError, "unsupported formatVersion");
    const Json& sh = j.at("shape");
    check_fields(sh, {"v", "h"}, "shape");
    FoliationShape shape(sh.at("v").get<int>(), sh.at("h").get<int>());
    int modulus = j.at("modulus").get<int>();
    if (modulus % 8 != 0 || modulus <= 0) fail(ErrorKind::ParseError, "modulus must be a positive multiple of 8");
    std::optional<int> floor;
    if (!j.at("floor").is_null()) floor = j.at("floor").get<int>();
    HSymbol a(shape, modulus, j.at("top").get<int>(), floor);
    for (const auto& t : j.at("terms")) {
        check_fields(t, {"degree", "gamma", "rhoQuarter", "logPow", "psiSet", "psiBarSet", "fourierCoeffs"},
                     "term");
        TermKey key;
        for (const auto& x : t.at("gamma")) {
            int g = x.get<int>();
            if (g < 0) fail(ErrorKind::ParseError, "gamma entries must be non-negative");
            key.gamma.push_back(static_cast<uint16_t>(g));
        }
        if (static_cast<int>(key.gamma.size()) != shape.n())
            fail(ErrorKind::ParseError, "gamma length must equal the torus dimension");
        key.rhoQuarter = t.at("rhoQuarter").get<int>();
        int lp = t.at("logPow").get<int>();
        if (lp < 0 || lp > 1) fail(ErrorKind::ParseError, "logPow must be 0 or 1");
        key.logPow = static_cast<uint8_t>(lp);
        key.word.psi = set_from_json(t.at("psiSet"));
        key.word.psiBar = set_from_json(t.at("psiBarSet"));
        int declared = t.at("degree").get<int>();
        if (declared != key.degree(shape))
            fail(ErrorKind::ParseError, "term degree disagrees with <gamma> + rhoQuarter");
        FourierFunction coeff(shape.n(), modulus);
        for (const auto& e : t.at("fourierCoeffs")) {
            check_fields(e, {"k", "cyclotomic", "piHalfExp", "gammaQuarterExp", "rationalCoeff"},
                         "fourier entry");
            FourierFunction::Mode mode = mode_from_json(e.at("k"));
            if (static_cast<int>(mode.size()) != shape.n())
                fail(ErrorKind::ParseError, "mode length must equal the torus dimension");
            Json one_entry = Json::array();
            Json stripped;
            stripped["cyclotomic"] = e.at("cyclotomic");
            stripped["piHalfExp"] = e.at("piHalfExp");
            stripped["gammaQuarterExp"] = e.at("gammaQuarterExp");
            stripped["rationalCoeff"] = e.value("rationalCoeff", std::string("1"));
            one_entry.push_back(stripped);
            coeff.add_coeff(mode, scalar_from_json(one_entry, modulus));
        }
        a.add_term(coeff, key);
    }
    return a.with_top(j.at("top").get<int>());
}

Json isometry_to_json(const IsometryElement& g) {
    Json j;
    Json p = Json::array(), s = Json::array(), b = Json::array();
    for (size_t i = 1; i < g.perm().size(); ++i) {
        p.push_back(g.perm()[i]);
        s.push_back(g.sign()[i]);
    }
    for (const auto& q : g.trans()) b.push_back(to_string(q));
    j["perm"] = p;
    j["sign"] = s;
    j["trans"] = b;
    return j;
}

IsometryElement isometry_from_json(const Json& j, const FoliationShape& shape, int modulus) {
    check_fields(j, {"perm", "sign", "trans"}, "isometry");
    std::vector<int> perm, sign;
    std::vector<Rational> trans;
    for (const auto& x : j.at("perm")) perm.push_back(x.get<int>());
    for (const auto& x : j.at("sign")) sign.push_back(x.get<int>());
    for (const auto& x : j.at("trans")) trans.push_back(parse_rational(x.get<std::string>()));
    return IsometryElement(shape, perm, sign, trans, modulus);
}

Json crossed_to_json(const CrossedSymbol& a) {
    Json j;
    j["formatVersion"] = 1;
    j["shape"] = Json{{"v", a.shape().v}, {"h", a.shape().h}};
    j["modulus"] = a.modulus();
    Json terms = Json::array();
    for (const auto& [g, s] : a.support()) {
        Json t;
        t["element"] = isometry_to_json(g);
        t["symbol"] = symbol_to_json(s);
        terms.push_back(t);
    }
    j["terms"] = terms;
    return j;
}

CrossedSymbol crossed_from_json(const Json& j) {
    check_fields(j, {"formatVersion", "shape", "modulus", "terms"}, "crossed document");
    const Json& sh = j.at("shape");
    FoliationShape shape(sh.at("v").get<int>(), sh.at("h").get<int>());
    int modulus = j.at("modulus").get<int>();
    CrossedSymbol out(shape, modulus);
    for (const auto& t : j.at("terms")) {
        check_fields(t, {"element", "symbol"}, "crossed term");
        IsometryElement g = isometry_from_json(t.at("element"), shape, modulus);
        HSymbol s = symbol_from_json(t.at("symbol"));
        if (s.shape() != shape || s.modulus() != modulus)
            fail(ErrorKind::ParseError, "crossed component shape/modulus mismatch");
        out.add(g, s);
    }
    return out;
}

Json VerificationReport::to_json() const {
    Json j;
    j["suite"] = suite;
    j["seed"] = seed;
    j["cases"] = cases;
    Json f = Json::array();
    for (const auto& s : failures) f.push_back(s);
    j["failures"] = f;
    j["wallMs"] = wall_ms;
    return j;
}

Json parse_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorKind::ParseError, e.what());
    }
}

HSymbol symbol_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::ParseError, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return symbol_from_json(parse_text(ss.str()));
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

}  // namespace heis
