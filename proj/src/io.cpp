#include "caratheo/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace caratheo {

Rational parseRational(const std::string& s) {
    auto trim = [](std::string t) {
        auto b = t.find_first_not_of(" \t");
        auto e = t.find_last_not_of(" \t");
        if (b == std::string::npos) return std::string();
        return t.substr(b, e - b + 1);
    };
    std::string t = trim(s);
    if (t.empty()) throw DataIntegrityError("parseRational: empty input");
    auto slash = t.find('/');
    auto parseInt = [&](const std::string& u) {
        std::string v = u;
        if (v.empty()) throw DataIntegrityError("parseRational: malformed '" + s + "'");
        std::size_t i = (v[0] == '+' || v[0] == '-') ? 1 : 0;
        if (i == v.size()) throw DataIntegrityError("parseRational: malformed '" + s + "'");
        for (; i < v.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(v[i])))
                throw DataIntegrityError("parseRational: malformed '" + s + "'");
        if (v[0] == '+') v.erase(v.begin());  // cpp_int rejects a leading plus
        return Integer(v);
    };
    if (slash == std::string::npos) return Rational(parseInt(t));
    Integer num = parseInt(trim(t.substr(0, slash)));
    Integer den = parseInt(trim(t.substr(slash + 1)));
    if (den == 0) throw DataIntegrityError("parseRational: zero denominator in '" + s + "'");
    return Rational(num, den);
}

std::string rationalToString(const Rational& r) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(r);
    if (boost::multiprecision::denominator(r) != 1)
        os << '/' << boost::multiprecision::denominator(r);
    return os.str();
}

std::string polyToString(const PolyQ& p) {
    if (p.isZero()) return "0";
    std::ostringstream os;
    bool first = true;
    // descending grlex: leading term first
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        Rational a = c;
        if (first) {
            if (a < 0) { os << "-"; a = -a; }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        os << rationalToString(a);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            os << " * x" << (i + 1);
            if (m[i] != 1) os << '^' << m[i];
        }
    }
    return os.str();
}

namespace {

struct PolyParser {
    const std::string& s;
    std::size_t pos = 0;

    explicit PolyParser(const std::string& text) : s(text) {}

    void skipWs() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skipWs();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw DataIntegrityError("parsePoly: " + what + " at position " +
                                 std::to_string(pos) + " of '" + s + "'");
    }

    std::string number() {
        skipWs();
        std::size_t start = pos;
        while (pos < s.size() &&
               std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected a number");
        return s.substr(start, pos - start);
    }

    Rational rational() {
        std::string num = number();
        skipWs();
        if (pos < s.size() && s[pos] == '/') {
            ++pos;
            std::string den = number();
            return parseRational(num + "/" + den);
        }
        return parseRational(num);
    }

    // one "c * x1^a1 ..." term appended into (monomials, coeffs)
    void term(std::vector<std::pair<Monomial, Rational>>& out, bool negative,
              int& maxVar) {
        skipWs();
        Rational c(1);
        bool sawCoeff = false;
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            c = rational();
            sawCoeff = true;
        }
        std::vector<std::pair<int, int>> factors;  // (1-based var, exponent)
        bool expectFactor = sawCoeff ? eat('*') : true;
        while (true) {
            skipWs();
            if (pos < s.size() && (s[pos] == 'x' || s[pos] == 'X')) {
                ++pos;
                int var = std::stoi(number());
                if (var < 1) fail("variable index must be at least 1");
                int e = 1;
                if (eat('^')) e = std::stoi(number());
                if (e < 0) fail("negative exponent");
                factors.emplace_back(var, e);
                maxVar = std::max(maxVar, var);
                if (eat('*')) { expectFactor = true; continue; }
                skipWs();
                // juxtaposed factors: "x1 x2^2" multiplies implicitly
                if (pos < s.size() && (s[pos] == 'x' || s[pos] == 'X')) {
                    expectFactor = false;
                    continue;
                }
                break;
            } else {
                if (expectFactor && !factors.empty()) fail("expected a variable after '*'");
                if (expectFactor && !sawCoeff) fail("expected a term");
                break;
            }
        }
        if (negative) c = -c;
        Monomial m;  // resized once n is known
        for (auto [var, e] : factors) {
            if (static_cast<int>(m.size()) < var) m.resize(var, 0);
            m[var - 1] += e;
        }
        out.emplace_back(std::move(m), std::move(c));
    }
};

}  // namespace

PolyQ parsePoly(const std::string& text, int variableCount) {
    PolyParser pp(text);
    pp.skipWs();
    std::vector<std::pair<Monomial, Rational>> terms;
    int maxVar = 0;
    bool neg = pp.eat('-');
    if (!neg && pp.pos < pp.s.size() && pp.s[pp.pos] == '0') {
        // allow the canonical zero polynomial "0"
        std::size_t save = pp.pos;
        Rational c = pp.rational();
        pp.skipWs();
        if (c == 0 && pp.pos == pp.s.size())
            return PolyQ(std::max(variableCount, 0));
        pp.pos = save;
    }
    pp.term(terms, neg, maxVar);
    while (true) {
        pp.skipWs();
        if (pp.pos >= pp.s.size()) break;
        bool negative;
        if (pp.eat('+')) negative = false;
        else if (pp.eat('-')) negative = true;
        else pp.fail("expected '+' or '-'");
        pp.term(terms, negative, maxVar);
    }
    int n = variableCount > 0 ? variableCount : maxVar;
    if (maxVar > n)
        throw DimensionError("parsePoly: variable x" + std::to_string(maxVar) +
                             " exceeds declared variable count");
    PolyQ p(n);
    for (auto& [m, c] : terms) {
        m.resize(n, 0);
        p.addTerm(std::move(m), std::move(c));
    }
    return p;
}

namespace {

double numberFromJson(const nlohmann::json& v) {
    if (v.is_string()) return toDouble(parseRational(v.get<std::string>()));
    if (v.is_number()) return v.get<double>();
    throw DataIntegrityError("expected a number or a rational string");
}

}  // namespace

nlohmann::json basisToJson(const Basis& basis) {
    nlohmann::json j;
    j["n"] = basis.variableCount();
    switch (basis.kind()) {
        case BasisKind::FullDegree:
            j["kind"] = "full";
            j["degree"] = *basis.degree();
            break;
        case BasisKind::Homogeneous:
            j["kind"] = "hom";
            j["degree"] = *basis.degree();
            break;
        case BasisKind::Gapped1D:
            j["kind"] = "gapped1d";
            j["exponents"] = basis.exponents();
            break;
        case BasisKind::Custom: {
            j["kind"] = "custom";
            std::vector<std::string> els;
            for (const auto& f : basis.elements()) els.push_back(polyToString(f));
            j["elements"] = els;
            break;
        }
    }
    return j;
}

Basis basisFromJson(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "gapped1d") {
        std::vector<int> exps;
        for (const auto& e : j.at("exponents"))
            exps.push_back(e.is_array() ? e.at(0).get<int>() : e.get<int>());
        return Basis::gapped1D(exps);
    }
    const int n = j.at("n").get<int>();
    if (kind == "full") return Basis::fullDegree(n, j.at("degree").get<int>());
    if (kind == "hom") return Basis::homogeneous(n, j.at("degree").get<int>());
    if (kind == "custom") {
        std::vector<PolyQ> els;
        for (const auto& e : j.at("elements"))
            els.push_back(parsePoly(e.get<std::string>(), n));
        return Basis::custom(n, std::move(els));
    }
    throw DataIntegrityError("basisFromJson: unknown kind '" + kind + "'");
}

nlohmann::json measureToJson(const AtomicMeasure& mu) {
    nlohmann::json atoms = nlohmann::json::array();
    for (int i = 0; i < mu.atomCount(); ++i) {
        nlohmann::json a;
        a["w"] = mu.weights[i];
        a["x"] = mu.points[i];
        atoms.push_back(std::move(a));
    }
    return {{"atoms", std::move(atoms)}, {"signed", mu.isSigned}};
}

AtomicMeasure measureFromJson(const nlohmann::json& j) {
    AtomicMeasure mu;
    mu.isSigned = j.value("signed", false);
    for (const auto& a : j.at("atoms")) {
        mu.weights.push_back(numberFromJson(a.at("w")));
        std::vector<double> x;
        for (const auto& v : a.at("x")) x.push_back(numberFromJson(v));
        mu.points.push_back(std::move(x));
    }
    return mu;
}

nlohmann::json momentSeqToJson(const MomentSeq& s) {
    return {{"basis", basisToJson(s.basis)}, {"values", s.values}};
}

MomentSeq momentSeqFromJson(const nlohmann::json& j) {
    MomentSeq s{basisFromJson(j.at("basis")), {}};
    for (const auto& v : j.at("values")) s.values.push_back(numberFromJson(v));
    if (static_cast<int>(s.values.size()) != s.basis.size())
        throw DataIntegrityError("momentSeqFromJson: value count does not match basis size");
    return s;
}

Basis parseBasisSpec(const std::string& spec) {
    auto parseNd = [&](const std::string& rest) {
        auto colon = rest.find(':');
        if (colon == std::string::npos)
            throw DataIntegrityError("basis spec needs the form kind:n:d — got '" + spec + "'");
        return std::pair<int, int>(std::stoi(rest.substr(0, colon)),
                                   std::stoi(rest.substr(colon + 1)));
    };
    if (spec.rfind("full:", 0) == 0) {
        auto [n, d] = parseNd(spec.substr(5));
        return Basis::fullDegree(n, d);
    }
    if (spec.rfind("hom:", 0) == 0) {
        auto [n, d] = parseNd(spec.substr(4));
        return Basis::homogeneous(n, d);
    }
    if (spec.rfind("gapped1d:", 0) == 0) {
        std::vector<int> exps;
        std::stringstream ss(spec.substr(9));
        std::string tok;
        while (std::getline(ss, tok, ',')) exps.push_back(std::stoi(tok));
        return Basis::gapped1D(exps);
    }
    std::ifstream in(spec);
    if (!in) throw DataIntegrityError("cannot open basis file '" + spec + "'");
    nlohmann::json j;
    in >> j;
    return basisFromJson(j);
}

}  // namespace caratheo
