#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <floerflow/floerflow.hpp>

using namespace floerflow;
namespace fs = std::filesystem;

namespace {

struct InputError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

std::string sha256Hex(std::string const& bytes)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
    static char const hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

std::string readFile(std::string const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void writeFile(fs::path const& path, std::string const& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text))
        throw InputError("cannot write '" + path.string() + "'");
}

// Everything a command produces; printed as one JSON document.
struct RunReport
{
    std::vector<std::string> command;
    json inputs = json::array();
    json results = json::object();
    std::vector<std::string> warnings;
    int status = 0;

    json load(std::string const& path, std::string const& role)
    {
        std::string const bytes = readFile(path);
        inputs.push_back({{"role", role}, {"path", path}, {"sha256", sha256Hex(bytes)}});
        try {
            return json::parse(bytes);
        } catch (json::parse_error const& e) {
            throw Error(Errc::ParseError, "'" + path + "': " + e.what());
        }
    }

    json toJson() const
    {
        return {{"command", command}, {"inputs", inputs}, {"results", results}, {"warnings", warnings},
                {"status", status}};
    }
};

struct Options
{
    std::string config;
    std::string input;
    std::string ring = "z";
    std::string base;
    bool strict = false;
    std::string a, b;
    std::string name;
    std::string dir = ".";
    std::string svg, csv;
};

NumericalConfig loadConfig(RunReport& rep, Options const& o)
{
    std::string path = o.config;
    if (path.empty())
        if (char const* env = std::getenv("FLOERFLOW_CONFIG"); env && *env)
            path = env;
    if (path.empty())
        return {};
    return NumericalConfig::fromJson(rep.load(path, "config"));
}

bool isFunction(json const& j) { return j.is_object() && j.contains("terms"); }

std::pair<FlowCategory, OrientationData> categoryInput(RunReport& rep, Options const& o, json const& j)
{
    if (!isFunction(j))
        return categoryFromJson(j);
    auto m = buildFlowCategory(functionFromJson(j), loadConfig(rep, o));
    rep.results["criticalPoints"] = criticalPointsToJson(m.points);
    return {std::move(m.category), std::move(m.orientation)};
}

json homologyJson(std::vector<HomologyGroup> const& h, CoefficientRing const& ring, int offset)
{
    json arr = json::array();
    for (std::size_t i = 0; i < h.size(); ++i) {
        auto j = homologyToJson(h[i], ring);
        j["degree"] = static_cast<int>(i) + offset;
        arr.push_back(std::move(j));
    }
    return arr;
}

json reportsJson(std::vector<Report> const& reps)
{
    json arr = json::array();
    for (auto const& r : reps)
        arr.push_back(r);
    return arr;
}

void cmdCrit(RunReport& rep, Options const& o)
{
    auto f = functionFromJson(rep.load(o.input, "function"));
    auto pts = findCriticalPoints(f, loadConfig(rep, o));
    json rows = json::array();
    std::vector<int> counts(static_cast<std::size_t>(f.dim()) + 1, 0);
    for (auto const& p : pts) {
        double minEig = std::abs(p.hessianEigenvalues.front());
        for (double e : p.hessianEigenvalues)
            minEig = std::min(minEig, std::abs(e));
        rows.push_back({{"id", p.id},
                        {"position", std::vector<double>(p.position.data(), p.position.data() + p.position.size())},
                        {"value", p.value},
                        {"index", p.index},
                        {"minAbsEigenvalue", minEig}});
        ++counts[static_cast<std::size_t>(p.index)];
    }
    int euler = 0;
    for (std::size_t i = 0; i < counts.size(); ++i)
        euler += (i % 2 == 0 ? 1 : -1) * counts[i];
    rep.results["criticalPoints"] = std::move(rows);
    rep.results["countsByIndex"] = counts;
    rep.results["euler"] = {{"alternatingSum", euler}, {"expected", 0}, {"ok", euler == 0}};
}

void cmdHomology(RunReport& rep, Options const& o)
{
    auto const ring = CoefficientRing::parse(o.ring);
    auto [cat, orient] = categoryInput(rep, o, rep.load(o.input, "input"));
    std::optional<std::string> base;
    if (!o.base.empty())
        base = o.base;
    auto fc = floerComplex(cat, orient, base, o.strict);
    if (fc.degreeOffset != 0)
        rep.warnings.push_back("relative gradings below zero; degrees shifted by " + std::to_string(fc.degreeOffset));
    rep.results["ring"] = ring.name();
    rep.results["degreeOffset"] = fc.degreeOffset;
    rep.results["complex"] = complexToJson(fc.complex);
    rep.results["homology"] = homologyJson(fc.complex.homology(ring), ring, fc.degreeOffset);
}

void cmdValidate(RunReport& rep, Options const& o)
{
    auto [cat, orient] = categoryInput(rep, o, rep.load(o.input, "input"));
    auto ms = validateMorseSmale(cat);
    auto co = checkOrientationCoherence(cat, orient);
    rep.results["reports"] = reportsJson({ms, co});
    rep.results["passed"] = ms.passed() && co.passed();
    if (!(ms.passed() && co.passed()))
        rep.status = 2;
}

void cmdStrata(RunReport& rep, Options const& o)
{
    auto [cat, orient] = categoryInput(rep, o, rep.load(o.input, "input"));
    auto chains = strata(cat, o.a, o.b);
    rep.results["strata"] = strataToJson(o.a, o.b, chains);
    json faces = json::array();
    int const k = cat.index(o.a) - cat.index(o.b) - 1;
    for (int j = 1; j <= k; ++j) {
        json fj = json::object();
        for (auto const& [c, members] : faceDecomposition(cat, o.a, o.b, j)) {
            json ms = json::array();
            for (auto const& s : members)
                ms.push_back(s.chain);
            fj[c] = std::move(ms);
        }
        faces.push_back({{"face", j}, {"through", std::move(fj)}});
    }
    rep.results["faces"] = std::move(faces);
    auto ks = validateKStructure(strataFaceStructure(cat, o.a, o.b));
    rep.results["kStructure"] = ks;
    if (!ks.passed())
        rep.status = 2;
}

void cmdRealize(RunReport& rep, Options const& o)
{
    auto const ring = CoefficientRing::parse(o.ring);
    json const j = rep.load(o.input, "complex");
    auto c = complexFromJson(j);
    std::map<FiltrationPair, IntegerMatrix> higher;
    if (j.contains("higher")) {
        json spec = {{"bases", c.bases()}, {"components", j.at("higher")}};
        higher = realizationFromJson(spec).components();
    }
    auto x = realize(c, ring, higher);
    auto check = checkRealization(x, c);
    rep.results["realization"] = realizationToJson(x);
    rep.results["report"] = check;
    rep.results["totalHomology"] = homologyJson(x.totalHomology(), ring, 0);
    if (!check.passed())
        rep.status = 2;
}

void cmdExamples(RunReport& rep, Options const& o)
{
    std::vector<std::string> names;
    if (o.name.empty())
        names = exampleNames();
    else
        names.push_back(o.name);
    auto const cfg = loadConfig(rep, o);
    fs::create_directories(o.dir);
    json written = json::array();
    auto emit = [&](std::string const& name, std::string const& kind, json const& doc) {
        std::string file = name;
        for (auto& ch : file)
            if (ch == ':')
                ch = '-';
        fs::path const path = fs::path(o.dir) / (file + "." + kind + ".json");
        std::string const text = doc.dump(2) + "\n";
        writeFile(path, text);
        written.push_back({{"name", name}, {"kind", kind}, {"path", path.string()}, {"sha256", sha256Hex(text)}});
    };
    for (auto const& name : names) {
        auto f = exampleFunction(name);
        if (f)
            emit(name, "function", functionToJson(*f));
        auto [cat, orient] = exampleCategory(name, cfg);
        emit(name, "category", categoryToJson(cat, orient));
    }
    rep.results["written"] = std::move(written);
}

void cmdOrbits(RunReport& rep, Options const& o)
{
    auto f = functionFromJson(rep.load(o.input, "function"));
    FlowEngine eng(f, loadConfig(rep, o));
    auto const& flows = eng.rigidFlows();
    rep.results["criticalPoints"] = criticalPointsToJson(eng.points());
    rep.results["flows"] = flowLinesToJson(flows);
    if (!o.svg.empty()) {
        writeFile(o.svg, orbitsSvg(eng.points(), flows));
        rep.results["svg"] = o.svg;
    }
    if (!o.csv.empty()) {
        writeFile(o.csv, trajectoriesCsv(flows, f.dim()));
        rep.results["csv"] = o.csv;
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Morse flow categories on tori: critical points, flows, validation, homology"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--config", o.config, "numerical config JSON (default: $FLOERFLOW_CONFIG)");

    auto* crit = app.add_subcommand("crit", "critical points of a function");
    crit->add_option("function", o.input, "function JSON")->required();

    auto* hom = app.add_subcommand("homology", "Floer homology of a category or function");
    hom->add_option("input", o.input, "category or function JSON")->required();
    hom->add_option("--ring", o.ring, "z | q | zmod:m | laurent:d:w");
    hom->add_option("--base", o.base, "object whose index is taken as 0");
    hom->add_flag("--strict", o.strict, "reject negative relative indices");

    auto* val = app.add_subcommand("validate", "Morse-Smale and orientation checks");
    val->add_option("input", o.input, "category or function JSON")->required();

    auto* str = app.add_subcommand("strata", "corner strata of the moduli space from a to b");
    str->add_option("input", o.input, "category or function JSON")->required();
    str->add_option("a", o.a, "upper object")->required();
    str->add_option("b", o.b, "lower object")->required();

    auto* rea = app.add_subcommand("realize", "filtered realization of a chain complex");
    rea->add_option("complex", o.input, "complex JSON")->required();
    rea->add_option("--ring", o.ring, "z | q | zmod:m | laurent:d:w");

    auto* ex = app.add_subcommand("examples", "write the example bank");
    ex->add_option("--name", o.name, "circle | torus | klein | rp2 | torus-perturbed:<seed>");
    ex->add_option("--dir", o.dir, "output directory");

    auto* orb = app.add_subcommand("orbits", "flow lines of a function");
    orb->add_option("function", o.input, "function JSON")->required();
    orb->add_option("--svg", o.svg, "write SVG polylines here");
    orb->add_option("--csv", o.csv, "write trajectory samples here");

    try {
        app.parse(argc, argv);
    } catch (CLI::CallForHelp const& e) {
        return app.exit(e);
    } catch (CLI::ParseError const& e) {
        app.exit(e);
        return 1;
    }

    RunReport rep;
    for (int i = 1; i < argc; ++i)
        rep.command.emplace_back(argv[i]);

    int code = 0;
    try {
        if (*crit)
            cmdCrit(rep, o);
        else if (*hom)
            cmdHomology(rep, o);
        else if (*val)
            cmdValidate(rep, o);
        else if (*str)
            cmdStrata(rep, o);
        else if (*rea)
            cmdRealize(rep, o);
        else if (*ex)
            cmdExamples(rep, o);
        else if (*orb)
            cmdOrbits(rep, o);
        code = rep.status;
    } catch (Error const& e) {
        code = isValidationFailure(e.code()) ? 2 : 1;
        rep.results["error"] = {{"code", std::string(errcName(e.code()))}, {"message", e.what()}};
        std::cerr << e.what() << "\n";
    } catch (InputError const& e) {
        code = 1;
        rep.results["error"] = {{"code", "IOError"}, {"message", e.what()}};
        std::cerr << e.what() << "\n";
    } catch (fs::filesystem_error const& e) {
        code = 1;
        rep.results["error"] = {{"code", "IOError"}, {"message", e.what()}};
        std::cerr << e.what() << "\n";
    }
    rep.status = code;
    std::cout << rep.toJson().dump(2) << "\n";
    return code;
}
