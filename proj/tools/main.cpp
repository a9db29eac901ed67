// caratheo command-line interface: every toolkit operation behind one binary,
// JSON on standard output, reproducible via --seed and --manifest.
#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "caratheo/boundstab.hpp"
#include "caratheo/certzero.hpp"
#include "caratheo/io.hpp"
#include "caratheo/measurefit.hpp"
#include "caratheo/ranklab.hpp"
#include "caratheo/schurid.hpp"

using namespace caratheo;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitDomainError = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitUsage = 64;

struct ManifestCollector {
    std::string outPath;
    std::vector<std::string> argvJoined;
    std::uint64_t seed = 0;
    json inputs = json::object();
    json tolerances = json::object();
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void addInput(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) return;
        // FNV-1a 64-bit content digest
        std::uint64_t h = 1469598103934665603ull;
        char c;
        while (in.get(c)) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ull;
        }
        std::ostringstream hex;
        hex << std::hex << h;
        inputs[path] = hex.str();
    }

    void write() const {
        if (outPath.empty()) return;
        json m;
        m["command"] = argvJoined;
        m["inputs"] = inputs;
        m["seed"] = seed;
        m["tolerances"] = tolerances;
        m["version"] = kVersion;
        m["wallTimeSeconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        std::ofstream out(outPath);
        out << m.dump(2) << "\n";
    }
};

json readJsonFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataIntegrityError("cannot open file '" + path + "'");
    json j;
    in >> j;
    return j;
}

// polynomial argument: a file path if it exists, otherwise inline text
PolyQ readPolyArg(const std::string& arg, ManifestCollector& mc) {
    std::ifstream in(arg);
    if (in) {
        mc.addInput(arg);
        std::stringstream ss;
        ss << in.rdbuf();
        return parsePoly(ss.str());
    }
    return parsePoly(arg);
}

std::vector<int> parseIntList(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

std::vector<double> parseDoubleList(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

json measureQToJson(const AtomicMeasureQ& mu) {
    json atoms = json::array();
    for (int i = 0; i < mu.atomCount(); ++i) {
        json a;
        a["w"] = rationalToString(mu.weights[i]);
        json x = json::array();
        for (const auto& c : mu.points[i]) x.push_back(rationalToString(c));
        a["x"] = std::move(x);
        atoms.push_back(std::move(a));
    }
    return {{"atoms", std::move(atoms)}, {"signed", mu.isSigned}};
}

json fitResultToJson(const FitResult& fr) {
    return {{"converged", fr.converged},
            {"residual", fr.residual},
            {"restartsUsed", fr.restartsUsed},
            {"measure", measureToJson(fr.measure)}};
}

json caraToJson(const CaraEstimate& est) {
    return {{"kMin", est.kMin},
            {"kFound", est.kFound},
            {"witness", fitResultToJson(est.witness)}};
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int runNa(const std::string& basisSpec, int maxK, int trials, bool closedForm,
          std::uint64_t seed, ManifestCollector& mc) {
    Basis basis = parseBasisSpec(basisSpec);
    mc.addInput(basisSpec);
    json out;
    out["basis"] = basisToJson(basis);
    out["lowerBound"] = naLowerBound(basis);
    if (closedForm) {
        if (!basis.degree())
            throw DataIntegrityError(
                "--closed-form needs a full or homogeneous basis");
        out["nA"] = naClosedForm(basis.variableCount(), *basis.degree(),
                                 basis.isHomogeneousKind());
        out["method"] = "closedForm";
    } else {
        if (maxK <= 0) maxK = basis.size();
        NAReport r = naProbe(basis, maxK, trials, seed);
        out["nA"] = r.nA;
        out["method"] = "probe";
        if (r.witness) out["witness"] = measureQToJson(*r.witness);
    }
    emit(out);
    return kExitOk;
}

int runSchur(const std::string& exponents, bool verifyIdentity,
             const std::string& cond22Mode, std::uint64_t seed) {
    auto exps = parseIntList(exponents);
    auto d = schurDecompose(exps);
    json out;
    out["exponents"] = d.exponents;
    out["pA"] = polyToString(d.pA);
    out["prefixPower"] = d.prefixPower;
    auto q = buildQ(d);
    json qs = json::array();
    for (const auto& p : q.polys) qs.push_back(polyToString(p));
    out["q"] = {{"even", q.even}, {"k", q.k}, {"polys", std::move(qs)}};
    if (verifyIdentity) {
        IdentityReport r = verifyJacobianIdentity(exps, 8, seed);
        out["identity"] = {
            {"verdict", r.verdict == Verdict::Equal ? "equal" : "mismatch"},
            {"symbolic", r.symbolic}};
        if (r.verdict != Verdict::Equal)
            out["identity"]["diff"] = polyToString(r.diff);
    }
    if (!cond22Mode.empty()) {
        auto r = checkCondition22(exps, cond22Mode, seed);
        json c = {{"holds", r.holds},
                  {"certified", r.certified},
                  {"detail", r.detail},
                  {"samples", r.samples}};
        if (!r.witness.empty()) c["witness"] = r.witness;
        out["condition22"] = std::move(c);
    }
    emit(out);
    return kExitOk;
}

int runFit(const std::string& seqPath, int k, bool signedFit, const FitConfig& cfg,
           ManifestCollector& mc) {
    mc.addInput(seqPath);
    MomentSeq s = momentSeqFromJson(readJsonFile(seqPath));
    FitResult fr = fitMeasure(s, k, signedFit, cfg);
    emit(fitResultToJson(fr));
    return fr.converged ? kExitOk : kExitNoConvergence;
}

int runCara(const std::string& seqPath, bool signedFit, const FitConfig& cfg,
            ManifestCollector& mc) {
    mc.addInput(seqPath);
    MomentSeq s = momentSeqFromJson(readJsonFile(seqPath));
    CaraEstimate est = estimateCara(s, signedFit, cfg);
    emit(caraToJson(est));
    return kExitOk;
}

int runMaxMass(const std::string& seqPath, const std::string& pointText,
               const std::string& eArg, const FitConfig& cfg, double massTol,
               ManifestCollector& mc) {
    mc.addInput(seqPath);
    MomentSeq s = momentSeqFromJson(readJsonFile(seqPath));
    PolyQ e = readPolyArg(eArg, mc);
    if (e.variableCount() < s.basis.variableCount()) {
        // lift a constant or lower-arity polynomial into the basis variables
        PolyQ lifted(s.basis.variableCount());
        for (const auto& [m, c] : e.terms()) {
            Monomial mm = m;
            mm.resize(s.basis.variableCount(), 0);
            lifted.addTerm(std::move(mm), c);
        }
        e = std::move(lifted);
    }
    MaxMassResult r = maxMass(s, parseDoubleList(pointText), e, cfg, massTol);
    emit({{"point", r.point},
          {"cLow", r.cLow},
          {"cHigh", r.cHigh},
          {"cStar", r.cStar},
          {"upperBoundUsed", r.upperBoundUsed}});
    return kExitOk;
}

int runFlow(const std::string& basisSpec, const std::string& measurePath,
            double t0, double t1, int steps, const std::string& normalization,
            double rate, int rateCoordinate, const std::string& csvPath,
            ManifestCollector& mc) {
    Basis basis = parseBasisSpec(basisSpec);
    mc.addInput(basisSpec);
    mc.addInput(measurePath);
    AtomicMeasure mu0 = measureFromJson(readJsonFile(measurePath));
    FlowConfig fcfg;
    if (normalization == "unit") {
        fcfg.normalization = FlowConfig::Normalization::Unit;
    } else if (normalization == "fixed-rate") {
        fcfg.normalization = FlowConfig::Normalization::FixedRate;
    } else {
        throw DataIntegrityError("unknown normalization '" + normalization + "'");
    }
    fcfg.rate = rate;
    fcfg.rateCoordinate = rateCoordinate;
    auto traj = kernelFlow(basis, mu0, t0, t1, steps, fcfg);
    if (!csvPath.empty()) {
        std::ofstream csv(csvPath);
        csv << "t";
        for (int i = 0; i < mu0.atomCount(); ++i) {
            csv << ",c" << (i + 1);
            for (int v = 0; v < basis.variableCount(); ++v)
                csv << ",x" << (i + 1) << "_" << (v + 1);
        }
        csv << ",drift\n";
        csv.precision(17);
        for (const auto& st : traj) {
            csv << st.t;
            for (int i = 0; i < st.measure.atomCount(); ++i) {
                csv << "," << st.measure.weights[i];
                for (double v : st.measure.points[i]) csv << "," << v;
            }
            csv << "," << st.momentDrift << "\n";
        }
    }
    json states = json::array();
    for (const auto& st : traj)
        states.push_back({{"t", st.t},
                          {"measure", measureToJson(st.measure)},
                          {"momentDrift", st.momentDrift}});
    emit({{"states", std::move(states)}});
    return kExitOk;
}

int runWaring(const std::string& polyArg, const FitConfig& cfg,
              ManifestCollector& mc) {
    PolyQ f = readPolyArg(polyArg, mc);
    WaringResult w = waringDecompose(f, cfg);
    emit({{"measure", measureToJson(w.measure)},
          {"reconstructionError", w.reconstructionError},
          {"estimate", caraToJson(w.estimate)}});
    return kExitOk;
}

int runCert(const std::string& name, const std::string& basisSpec,
            bool dumpMatrix, ManifestCollector& mc) {
    Basis basis = basisSpec == "motzkin-example" ? motzkinExampleBasis()
                                                 : parseBasisSpec(basisSpec);
    mc.addInput(basisSpec);
    ZeroCertificate cert = certify(name, basis);
    json out;
    out["polynomial"] = polyToString(cert.input.polynomial);
    out["zeroCount"] = cert.input.zeros.size();
    out["basis"] = basisToJson(cert.basis);
    out["matrixRank"] = cert.matrixRank;
    out["floatRank"] = cert.floatRank;
    out["independent"] = cert.independent;
    out["impliedLowerBound"] = cert.impliedLowerBound;
    if (dumpMatrix) {
        json rows = json::array();
        for (const auto& z : cert.input.zeros) {
            auto sv = momentCurve(cert.basis, z);
            json row = json::array();
            for (const auto& v : sv) {
                std::ostringstream os;
                os << v;
                row.push_back(os.str());
            }
            rows.push_back(std::move(row));
        }
        out["matrix"] = std::move(rows);
    }
    emit(out);
    return kExitOk;
}

int runBounds(const std::string& rowsText, const std::string& format) {
    std::vector<long long> rows;
    for (int v : parseIntList(rowsText)) rows.push_back(v);
    auto table = buildTable(rows);
    auto knownText = [](const BoundsRow& r) {
        if (!r.known) return std::string("--");
        std::string t = std::to_string(*r.known);
        if (!r.knownSource.empty()) t += " [" + r.knownSource + "]";
        return t;
    };
    if (format == "json") {
        json out = json::array();
        for (const auto& r : table) {
            json row = {{"2d", r.twoD},          {"nLower", r.nLower},
                        {"richter", r.richter},  {"richterMinusOne", r.richterMinusOne},
                        {"alphaNext", r.alphaNext}, {"maxFormula", r.maxFormula}};
            if (r.known) {
                row["known"] = *r.known;
                row["knownSource"] = r.knownSource;
            }
            out.push_back(std::move(row));
        }
        emit(out);
    } else if (format == "csv") {
        std::cout << "2d,nLower,richter,richterMinusOne,alphaNext,maxFormula,known\n";
        for (const auto& r : table) {
            std::cout << r.twoD << ',' << r.nLower << ',' << r.richter << ','
                      << r.richterMinusOne << ',' << r.alphaNext << ','
                      << r.maxFormula << ','
                      << (r.known ? std::to_string(*r.known) : std::string())
                      << "\n";
        }
    } else if (format == "table") {
        std::cout << "    2d    lower  richter  richter-1  zero-cap  max-formula  known\n";
        for (const auto& r : table) {
            char buf[128];
            std::snprintf(buf, sizeof(buf), "%6lld %8lld %8lld %10lld %9lld %12lld  %s\n",
                          r.twoD, r.nLower, r.richter, r.richterMinusOne,
                          r.alphaNext, r.maxFormula, knownText(r).c_str());
            std::cout << buf;
        }
    } else {
        throw DataIntegrityError("unknown format '" + format + "'");
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"moment-sequence toolkit: atomic-measure fitting, symbolic "
                 "determinant identities, rank probes, and bound tables"};
    app.require_subcommand(1);

    ManifestCollector mc;
    for (int i = 0; i < argc; ++i) mc.argvJoined.push_back(argv[i]);

    std::uint64_t seed = 0;
    std::string manifestPath;
    FitConfig cfg;
    double massTol = 1e-6;

    auto addCommon = [&](CLI::App* sub) {
        sub->add_option("--seed", seed, "random seed (determines all stochastic behavior)");
        sub->add_option("--manifest", manifestPath, "write a run manifest to this file");
    };
    auto addFitOpts = [&](CLI::App* sub) {
        sub->add_option("--tol", cfg.fitTolerance, "relative fit tolerance");
        sub->add_option("--restarts", cfg.restarts, "multi-start budget");
        sub->add_option("--max-iterations", cfg.maxIterations, "solver iteration cap");
    };

    // na
    std::string naBasis;
    int naMaxK = 0, naTrials = 3;
    bool naClosed = false;
    auto* na = app.add_subcommand("na", "smallest atom count with a full-rank derivative");
    na->add_option("--basis", naBasis, "basis spec or JSON file")->required();
    na->add_option("--max-k", naMaxK, "largest k to probe (default: basis size)");
    na->add_option("--trials", naTrials, "random configurations per k");
    na->add_flag("--closed-form", naClosed, "use the closed form instead of probing");
    addCommon(na);

    // schur
    std::string schExponents, schCond22;
    bool schVerify = false;
    auto* sch = app.add_subcommand("schur", "determinant factorization for gapped bases");
    sch->add_option("--exponents", schExponents, "comma-separated exponent list")->required();
    sch->add_flag("--verify-identity", schVerify, "check the closed-form determinant identity");
    sch->add_option("--check-condition22", schCond22,
                    "coordinate-collision check mode (numeric|positivity)");
    addCommon(sch);

    // fit
    std::string fitSeq;
    int fitK = 0;
    bool fitSigned = false;
    auto* fit = app.add_subcommand("fit", "fit a k-atomic measure to a moment sequence");
    fit->add_option("--seq", fitSeq, "moment sequence JSON file")->required();
    fit->add_option("--k", fitK, "atom count")->required();
    fit->add_flag("--signed", fitSigned, "allow signed weights");
    addFitOpts(fit);
    addCommon(fit);

    // cara
    std::string caraSeq;
    bool caraSigned = false;
    auto* cara = app.add_subcommand("cara", "smallest converged atom count for a sequence");
    cara->add_option("--seq", caraSeq, "moment sequence JSON file")->required();
    cara->add_flag("--signed", caraSigned, "allow signed weights");
    addFitOpts(cara);
    addCommon(cara);

    // maxmass
    std::string mmSeq, mmPoint, mmE;
    auto* mm = app.add_subcommand("maxmass", "largest point mass over representing measures");
    mm->add_option("--seq", mmSeq, "moment sequence JSON file")->required();
    mm->add_option("--point", mmPoint, "comma-separated point coordinates")->required();
    mm->add_option("--e", mmE, "positive polynomial in the basis span (text or file)")
        ->required();
    mm->add_option("--mass-tolerance", massTol, "bisection tolerance");
    addFitOpts(mm);
    addCommon(mm);

    // flow
    std::string flBasis, flMeasure, flNorm = "unit", flCsv;
    double flT0 = 0, flT1 = 1, flRate = -2.0;
    int flSteps = 100, flRateCoord = 0;
    auto* fl = app.add_subcommand("flow", "integrate the equal-moments kernel flow");
    fl->add_option("--basis", flBasis, "basis spec or JSON file")->required();
    fl->add_option("--measure", flMeasure, "initial measure JSON file")->required();
    fl->add_option("--t0", flT0, "start time");
    fl->add_option("--t1", flT1, "end time");
    fl->add_option("--steps", flSteps, "integration steps");
    fl->add_option("--normalization", flNorm, "unit|fixed-rate");
    fl->add_option("--rate", flRate, "prescribed rate (fixed-rate mode)");
    fl->add_option("--rate-coordinate", flRateCoord, "coordinate carrying the rate");
    fl->add_option("--csv", flCsv, "also write the trajectory as CSV to this file");
    addCommon(fl);

    // waring
    std::string wrPoly;
    auto* wr = app.add_subcommand("waring", "signed power decomposition of an even form");
    wr->add_option("--poly", wrPoly, "homogeneous polynomial (text or file)")->required();
    addFitOpts(wr);
    addCommon(wr);

    // cert
    std::string ctName, ctBasis;
    bool ctDump = false;
    auto* ct = app.add_subcommand("cert", "independence certificate at a zero set");
    ct->add_option("--name", ctName, "builtin polynomial (motzkin|robinson|harris)")
        ->required();
    ct->add_option("--basis", ctBasis, "basis spec, JSON file, or motzkin-example")
        ->required();
    ct->add_flag("--dump-matrix", ctDump, "include the full moment matrix");
    addCommon(ct);

    // bounds
    std::string bdRows, bdFormat = "json";
    auto* bd = app.add_subcommand("bounds", "bound table for ternary forms");
    bd->add_option("--rows", bdRows, "comma-separated even degrees")->required();
    bd->add_option("--format", bdFormat, "table|json|csv");
    addCommon(bd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    mc.outPath = manifestPath;
    mc.seed = seed;
    cfg.seed = seed;
    mc.tolerances = {{"fitTolerance", cfg.fitTolerance},
                     {"massTolerance", massTol}};

    int code = kExitOk;
    try {
        if (*na) code = runNa(naBasis, naMaxK, naTrials, naClosed, seed, mc);
        else if (*sch) code = runSchur(schExponents, schVerify, schCond22, seed);
        else if (*fit) code = runFit(fitSeq, fitK, fitSigned, cfg, mc);
        else if (*cara) code = runCara(caraSeq, caraSigned, cfg, mc);
        else if (*mm) code = runMaxMass(mmSeq, mmPoint, mmE, cfg, massTol, mc);
        else if (*fl)
            code = runFlow(flBasis, flMeasure, flT0, flT1, flSteps, flNorm,
                           flRate, flRateCoord, flCsv, mc);
        else if (*wr) code = runWaring(wrPoly, cfg, mc);
        else if (*ct) code = runCert(ctName, ctBasis, ctDump, mc);
        else if (*bd) code = runBounds(bdRows, bdFormat);
    } catch (const FlowBreakdown& e) {
        std::cerr << "flow breakdown at t = " << e.t << ": " << e.what() << "\n";
        code = kExitNoConvergence;
    } catch (const ProbeExhausted& e) {
        std::cerr << e.what() << " (best rank " << e.bestRank << " of "
                  << e.target << ")\n";
        code = kExitNoConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        code = kExitDomainError;
    }
    mc.write();
    return code;
}
