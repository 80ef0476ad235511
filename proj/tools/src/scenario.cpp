#include "scenario.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "stardeform/parse.hpp"
#include "tasks.hpp"

namespace stardeform::cli {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message)
{
    throw ScenarioError((path.empty() ? std::string("/") : path) + ": " + message);
}

std::string child(const std::string& path, const std::string& key)
{
    return path + "/" + key;
}

std::string child(const std::string& path, std::size_t index)
{
    return path + "/" + std::to_string(index);
}

void require_object(const json& j, const std::string& path, const std::set<std::string>& allowed)
{
    if (!j.is_object()) {
        fail(path, "expected an object");
    }
    for (const auto& [key, value] : j.items()) {
        if (!allowed.count(key)) {
            fail(child(path, key), "unknown key");
        }
    }
}

const json& required(const json& j, const std::string& path, const std::string& key)
{
    if (!j.contains(key)) {
        fail(path, "missing key '" + key + "'");
    }
    return j.at(key);
}

std::int64_t integer_in(const json& j, const std::string& path, std::int64_t lo, std::int64_t hi)
{
    if (!j.is_number_integer()) {
        fail(path, "expected an integer");
    }
    const auto v = j.get<std::int64_t>();
    if (v < lo || v > hi) {
        fail(path, "must lie in " + std::to_string(lo) + ".." + std::to_string(hi));
    }
    return v;
}

std::string string_at(const json& j, const std::string& path)
{
    if (!j.is_string()) {
        fail(path, "expected a string");
    }
    return j.get<std::string>();
}

std::vector<std::string> strings_at(const json& j, const std::string& path)
{
    if (!j.is_array()) {
        fail(path, "expected an array of strings");
    }
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(string_at(j[i], child(path, i)));
    }
    return out;
}

// Line and column of a byte offset; nlohmann reports the offset one past
// the offending character.
std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte)
{
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
    for (std::size_t k = 0; k < end; ++k) {
        if (text[k] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

FixtureKind fixture_kind(const std::string& name, const std::string& path)
{
    if (name == "projection") {
        return FixtureKind::projection;
    }
    if (name == "matrix") {
        return FixtureKind::matrix;
    }
    if (name == "element") {
        return FixtureKind::element;
    }
    if (name == "series") {
        return FixtureKind::series;
    }
    fail(path, "unknown fixture kind '" + name + "'");
}

FixtureSpec parse_fixture(const json& j, const std::string& path)
{
    require_object(j, path, {"kind", "rows", "cols", "entries", "value"});
    FixtureSpec f{.kind = fixture_kind(string_at(required(j, path, "kind"), child(path, "kind")), child(path, "kind")),
                  .path = path};
    switch (f.kind) {
    case FixtureKind::series:
        f.entries = {string_at(required(j, path, "value"), child(path, "value"))};
        return f;
    case FixtureKind::element:
        f.entries = strings_at(required(j, path, "entries"), child(path, "entries"));
        f.rows = f.entries.size();
        if (f.rows == 0) {
            fail(child(path, "entries"), "an element needs at least one entry");
        }
        return f;
    case FixtureKind::projection:
    case FixtureKind::matrix:
        break;
    }
    f.rows = static_cast<std::size_t>(integer_in(required(j, path, "rows"), child(path, "rows"), 1, 8));
    f.cols = f.kind == FixtureKind::projection
                 ? f.rows
                 : static_cast<std::size_t>(integer_in(required(j, path, "cols"), child(path, "cols"), 1, 8));
    if (f.kind == FixtureKind::projection && j.contains("cols") && j["cols"] != j["rows"]) {
        fail(child(path, "cols"), "a projection is square");
    }
    f.entries = strings_at(required(j, path, "entries"), child(path, "entries"));
    if (f.entries.size() != f.rows * f.cols) {
        fail(child(path, "entries"), "expected " + std::to_string(f.rows * f.cols) + " entries, got " +
                                         std::to_string(f.entries.size()));
    }
    return f;
}

const char* kind_name(FixtureKind k)
{
    switch (k) {
    case FixtureKind::projection:
        return "projection";
    case FixtureKind::matrix:
        return "matrix";
    case FixtureKind::element:
        return "element";
    case FixtureKind::series:
        return "series";
    }
    return "?";
}

void require_fixture(const ScenarioSpec& s, const json& value, const std::string& path,
                     std::initializer_list<FixtureKind> kinds)
{
    const std::string name = string_at(value, path);
    const auto it = s.fixtures.find(name);
    if (it == s.fixtures.end()) {
        fail(path, "unknown fixture '" + name + "'");
    }
    for (auto k : kinds) {
        if (it->second.kind == k) {
            return;
        }
    }
    fail(path, "fixture '" + name + "' is a " + kind_name(it->second.kind) + ", expected a " +
                   kind_name(*kinds.begin()));
}

void check_param(const ScenarioSpec& s, const ParamInfo& info, const json& value, const std::string& path)
{
    switch (info.type) {
    case ParamType::projection:
        require_fixture(s, value, path, {FixtureKind::projection});
        break;
    case ParamType::matrix:
        require_fixture(s, value, path, {FixtureKind::matrix, FixtureKind::projection});
        break;
    case ParamType::elements:
        if (!value.is_array()) {
            fail(path, "expected an array of fixture names");
        }
        for (std::size_t i = 0; i < value.size(); ++i) {
            require_fixture(s, value[i], child(path, i), {FixtureKind::element});
        }
        break;
    case ParamType::count:
        integer_in(value, path, 0, 200);
        break;
    case ParamType::method: {
        const auto m = string_at(value, path);
        if (m != "fedosov" && m != "recursive") {
            fail(path, "expected \"fedosov\" or \"recursive\"");
        }
        break;
    }
    case ParamType::flag:
        if (!value.is_boolean()) {
            fail(path, "expected a boolean");
        }
        break;
    case ParamType::coefficient:
        string_at(value, path);
        break;
    case ParamType::coefficient_pairs:
    case ParamType::string_triples: {
        const std::size_t width = info.type == ParamType::coefficient_pairs ? 2 : 3;
        if (!value.is_array()) {
            fail(path, "expected an array");
        }
        for (std::size_t i = 0; i < value.size(); ++i) {
            const auto row = strings_at(value[i], child(path, i));
            if (row.size() != width) {
                fail(child(path, i), "expected " + std::to_string(width) + " strings");
            }
        }
        break;
    }
    }
}

TaskSpec parse_task(const ScenarioSpec& s, const json& j, const std::string& path)
{
    require_object(j, path, {"task", "label", "params"});
    TaskSpec t;
    t.task = string_at(required(j, path, "task"), child(path, "task"));
    const TaskInfo* info = find_task(t.task);
    if (!info) {
        fail(child(path, "task"), "unknown task '" + t.task + "'");
    }
    t.label = j.contains("label") ? string_at(j["label"], child(path, "label")) : t.task;
    t.params = j.value("params", json::object());
    const std::string ppath = child(path, "params");
    if (!t.params.is_object()) {
        fail(ppath, "expected an object");
    }
    for (const auto& [key, value] : t.params.items()) {
        const ParamInfo* param = nullptr;
        for (const auto& p : info->params) {
            if (p.key == key) {
                param = &p;
            }
        }
        if (!param) {
            fail(child(ppath, key), "task '" + t.task + "' takes no parameter '" + key + "'");
        }
        check_param(s, *param, value, child(ppath, key));
    }
    for (const auto& p : info->params) {
        if (p.required && !t.params.contains(std::string(p.key))) {
            fail(ppath, "task '" + t.task + "' needs '" + std::string(p.key) + "'");
        }
    }
    return t;
}

Rational rational_at(const json& j, const std::string& path)
{
    if (j.is_number_integer()) {
        return Rational(static_cast<long>(j.get<std::int64_t>()));
    }
    if (j.is_string()) {
        try {
            Rational r(j.get<std::string>());
            r.canonicalize();
            return r;
        } catch (const std::invalid_argument&) {
        }
    }
    fail(path, "expected an integer or a rational string such as \"1/2\"");
}

MultiIndex multi_index_at(const json& j, const std::string& path, std::size_t dim)
{
    if (!j.is_array() || j.size() != dim) {
        fail(path, "expected " + std::to_string(dim) + " derivative counts");
    }
    MultiIndex m{};
    for (std::size_t a = 0; a < dim; ++a) {
        m[a] = static_cast<std::uint16_t>(integer_in(j[a], child(path, a), 0, 8));
    }
    return m;
}

GaussianRational scalar_at(const json& j, const std::string& path, const Variables& vars)
{
    if (j.is_number_integer()) {
        return {static_cast<std::int64_t>(j.get<std::int64_t>())};
    }
    const auto text = string_at(j, path);
    try {
        const Coefficient c = parse_coefficient(text, vars);
        if (c.is_constant()) {
            return c.constant_value();
        }
    } catch (const ParseError& e) {
        fail(path, e.what());
    }
    fail(path, "cochain weights must be constants");
}

Variables variables_at(const json& algebra, const std::string& path, std::size_t count)
{
    if (!algebra.contains("variables")) {
        return make_indexed_variables(count);
    }
    const auto names = strings_at(algebra["variables"], child(path, "variables"));
    if (names.size() != count) {
        fail(child(path, "variables"), "expected " + std::to_string(count) + " names");
    }
    try {
        return make_variables(names);
    } catch (const std::invalid_argument& e) {
        fail(child(path, "variables"), e.what());
    }
}

CoefficientDomain domain_at(const json& algebra, const std::string& path)
{
    if (!algebra.contains("domain")) {
        return CoefficientDomain::rational;
    }
    const auto d = string_at(algebra["domain"], child(path, "domain"));
    if (d == "rational") {
        return CoefficientDomain::rational;
    }
    if (d == "polynomial") {
        return CoefficientDomain::polynomial;
    }
    fail(child(path, "domain"), "expected \"rational\" or \"polynomial\"");
}

StarAlgebra build_moyal(const json& a, int order)
{
    const std::string path = "/algebra";
    require_object(a, path, {"type", "n", "theta", "variables", "domain"});
    const auto n = static_cast<std::size_t>(integer_in(required(a, path, "n"), child(path, "n"), 1, 3));
    std::vector<std::vector<Rational>> theta;
    if (a.contains("theta")) {
        const auto& t = a["theta"];
        const std::string tpath = child(path, "theta");
        if (!t.is_array() || t.size() != 2 * n) {
            fail(tpath, "expected a " + std::to_string(2 * n) + "x" + std::to_string(2 * n) + " array");
        }
        for (std::size_t r = 0; r < t.size(); ++r) {
            if (!t[r].is_array() || t[r].size() != 2 * n) {
                fail(child(tpath, r), "expected " + std::to_string(2 * n) + " entries");
            }
            std::vector<Rational> row;
            for (std::size_t c = 0; c < t[r].size(); ++c) {
                row.push_back(rational_at(t[r][c], child(child(tpath, r), c)));
            }
            theta.push_back(std::move(row));
        }
    } else {
        theta = standard_symplectic(n);
    }
    const Variables vars = variables_at(a, path, 2 * n);
    try {
        return moyal_stack(n, theta, order, vars, domain_at(a, path));
    } catch (const std::invalid_argument& e) {
        fail(child(path, "theta"), e.what());
    }
}

StarAlgebra build_custom(const json& a, int order)
{
    const std::string path = "/algebra";
    require_object(a, path, {"type", "variables", "cochains", "hermitian", "vey_orders", "domain"});
    const auto names = strings_at(required(a, path, "variables"), child(path, "variables"));
    const Variables vars = variables_at(a, path, names.size());
    const std::size_t dim = names.size();

    CochainStack stack;
    stack.dim = dim;
    const auto& cs = required(a, path, "cochains");
    const std::string cpath = child(path, "cochains");
    if (!cs.is_array() || cs.empty()) {
        fail(cpath, "expected a nonempty array of cochains");
    }
    for (std::size_t r = 0; r < cs.size(); ++r) {
        const std::string rpath = child(cpath, r);
        if (!cs[r].is_array()) {
            fail(rpath, "expected an array of terms");
        }
        std::vector<BidifferentialTerm> terms;
        for (std::size_t k = 0; k < cs[r].size(); ++k) {
            const auto& t = cs[r][k];
            const std::string tpath = child(rpath, k);
            require_object(t, tpath, {"weight", "left", "right"});
            terms.push_back({scalar_at(required(t, tpath, "weight"), child(tpath, "weight"), vars),
                             multi_index_at(required(t, tpath, "left"), child(tpath, "left"), dim),
                             multi_index_at(required(t, tpath, "right"), child(tpath, "right"), dim)});
        }
        stack.cochains.emplace_back(std::move(terms));
    }
    if (!(stack.cochains.front() == Cochain::pointwise())) {
        fail(child(cpath, 0), "the zeroth cochain must be pointwise multiplication");
    }
    if (a.contains("hermitian")) {
        if (!a["hermitian"].is_boolean()) {
            fail(child(path, "hermitian"), "expected a boolean");
        }
        stack.hermitian_flag = a["hermitian"].get<bool>();
    }
    if (a.contains("vey_orders")) {
        const auto& v = a["vey_orders"];
        if (!v.is_array()) {
            fail(child(path, "vey_orders"), "expected an array of integers");
        }
        for (std::size_t r = 0; r < v.size(); ++r) {
            stack.vey_orders.push_back(
                static_cast<std::size_t>(integer_in(v[r], child(child(path, "vey_orders"), r), 0, 16)));
        }
    } else {
        for (std::size_t r = 0; r < stack.cochains.size(); ++r) {
            stack.vey_orders.push_back(r);
        }
    }
    try {
        return {vars, domain_at(a, path), order, std::move(stack)};
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
}

} // namespace

ScenarioSpec parse_scenario(const std::string& text, const std::string& fallback_name)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_column(text, e.byte);
        std::string what = e.what();
        // Drop the library's "[json.exception.parse_error.101] parse error at ..." prefix.
        if (const auto pos = what.find(": "); pos != std::string::npos) {
            what = what.substr(pos + 2);
        }
        throw ScenarioError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
    }

    require_object(doc, "", {"name", "description", "algebra", "order", "seed", "fixtures", "tasks"});
    ScenarioSpec s;
    s.name = doc.contains("name") ? string_at(doc["name"], "/name") : fallback_name;
    if (doc.contains("description")) {
        string_at(doc["description"], "/description");
    }
    s.algebra = required(doc, "", "algebra");
    if (!s.algebra.is_object()) {
        fail("/algebra", "expected an object");
    }
    const auto type = string_at(required(s.algebra, "/algebra", "type"), "/algebra/type");
    if (type != "moyal" && type != "custom") {
        fail("/algebra/type", "expected \"moyal\" or \"custom\"");
    }
    if (doc.contains("order")) {
        s.order = static_cast<int>(integer_in(doc["order"], "/order", 0, kMaxOrder));
    }
    if (doc.contains("seed")) {
        s.seed = static_cast<std::uint64_t>(integer_in(doc["seed"], "/seed", 0, INT64_MAX));
    }
    if (doc.contains("fixtures")) {
        const auto& fx = doc["fixtures"];
        if (!fx.is_object()) {
            fail("/fixtures", "expected an object");
        }
        for (const auto& [name, value] : fx.items()) {
            s.fixtures.emplace(name, parse_fixture(value, child("/fixtures", name)));
        }
    }
    const auto& tasks = required(doc, "", "tasks");
    if (!tasks.is_array()) {
        fail("/tasks", "expected an array");
    }
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        s.tasks.push_back(parse_task(s, tasks[i], child("/tasks", i)));
    }
    return s;
}

ScenarioSpec load_scenario_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ScenarioError(path + ": cannot open file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string stem = path;
    if (const auto slash = stem.find_last_of('/'); slash != std::string::npos) {
        stem = stem.substr(slash + 1);
    }
    if (const auto dot = stem.rfind('.'); dot != std::string::npos && dot > 0) {
        stem = stem.substr(0, dot);
    }
    try {
        return parse_scenario(buf.str(), stem);
    } catch (const ScenarioError& e) {
        throw ScenarioError(path + ": " + e.what());
    }
}

StarAlgebra build_algebra(const json& algebra, int order)
{
    const auto type = algebra.at("type").get<std::string>();
    return type == "moyal" ? build_moyal(algebra, order) : build_custom(algebra, order);
}

FixtureSet::FixtureSet(const StarAlgebra& alg, const std::map<std::string, FixtureSpec>& specs)
{
    for (const auto& [name, spec] : specs) {
        std::vector<Series> entries;
        for (std::size_t k = 0; k < spec.entries.size(); ++k) {
            const std::string path =
                spec.kind == FixtureKind::series ? child(spec.path, "value") : child(child(spec.path, "entries"), k);
            try {
                entries.push_back(parse_series(spec.entries[k], alg.variables(), alg.order(), alg.domain()));
            } catch (const ParseError& e) {
                fail(path, e.what());
            } catch (const std::domain_error& e) {
                fail(path, e.what());
            }
        }
        StarMatrix m = StarMatrix::zero(alg, spec.rows, spec.cols);
        for (std::size_t k = 0; k < entries.size(); ++k) {
            m(k / spec.cols, k % spec.cols) = entries[k];
        }
        if (spec.kind == FixtureKind::projection) {
            try {
                require_classical_idempotent(m);
            } catch (const std::invalid_argument& e) {
                fail(spec.path, e.what());
            }
        }
        values_.emplace(name, Value{spec.kind, std::move(m)});
    }
}

const FixtureSet::Value& FixtureSet::get(const std::string& name) const
{
    const auto it = values_.find(name);
    if (it == values_.end()) {
        throw ScenarioError("unknown fixture '" + name + "'");
    }
    return it->second;
}

const StarMatrix& FixtureSet::matrix(const std::string& name) const
{
    return get(name).matrix;
}

const StarMatrix& FixtureSet::element(const std::string& name) const
{
    return get(name).matrix;
}

const Series& FixtureSet::series(const std::string& name) const
{
    return get(name).matrix(0, 0);
}

} // namespace stardeform::cli
