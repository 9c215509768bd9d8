#include <srlab/report.hpp>

#include <fstream>
#include <sstream>

namespace srlab {

Json RunConfig::to_json() const {
    Json j;
    j["command"] = command;
    j["q"] = q;
    j["n"] = n;
    j["t"] = t;
    j["family"] = family;
    j["variant"] = variant;
    j["format"] = format;
    j["tau"] = tau;
    j["budget"] = budget;
    j["seed"] = seed;
    j["threads"] = threads;
    return j;
}

bool Report::all_pass() const {
    for (const CheckResult& c : checks)
        if (!c.verdict) return false;
    for (const Finding& f : findings)
        if (!f.expected) return false;
    return true;
}

Json Report::to_json() const {
    Json j;
    j["config"] = config.to_json();
    j["version"] = version;
    j["checks"] = Json::array();
    for (const CheckResult& c : checks)
        j["checks"].push_back(Json{{"name", c.name}, {"verdict", c.verdict}, {"details", c.details}});
    j["findings"] = Json::array();
    for (const Finding& f : findings)
        j["findings"].push_back(
            Json{{"kind", f.kind}, {"detail", f.detail}, {"expected", f.expected}, {"data", f.data}});
    j["result"] = result;
    j["passed"] = all_pass();
    j["elapsed_seconds"] = elapsed_seconds;
    return j;
}

namespace {

void strip_volatile(Json& j) {
    if (j.is_object()) {
        j.erase("elapsed_seconds");
        j.erase("elapsed_ms");
        j.erase("timings");
        for (auto& [key, value] : j.items()) strip_volatile(value);
    } else if (j.is_array()) {
        for (auto& value : j) strip_volatile(value);
    }
}

} // namespace

std::string canonical_json(const Json& report) {
    Json stable = report;
    strip_volatile(stable);
    return stable.dump(2) + "\n";
}

void golden_store(const Json& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << canonical_json(report);
    if (!out) throw IoError("write failed: " + path);
}

bool golden_compare(const Json& report, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open golden file: " + path);
    std::ostringstream stored;
    stored << in.rdbuf();
    return stored.str() == canonical_json(report);
}

namespace {

bool type_matches(const Json& doc, const std::string& type) {
    if (type == "object") return doc.is_object();
    if (type == "array") return doc.is_array();
    if (type == "string") return doc.is_string();
    if (type == "boolean") return doc.is_boolean();
    if (type == "integer") return doc.is_number_integer();
    if (type == "number") return doc.is_number();
    if (type == "null") return doc.is_null();
    return false;
}

bool check_node(const Json& doc, const Json& schema, const std::string& where,
                std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = where + ": " + msg;
        return false;
    };
    if (schema.contains("type") && !type_matches(doc, schema["type"].get<std::string>()))
        return fail("expected type " + schema["type"].get<std::string>());
    if (schema.contains("enum")) {
        bool hit = false;
        for (const auto& v : schema["enum"])
            if (v == doc) hit = true;
        if (!hit) return fail("value not in enum");
    }
    if (doc.is_object()) {
        if (schema.contains("required"))
            for (const auto& key : schema["required"])
                if (!doc.contains(key.get<std::string>()))
                    return fail("missing required key " + key.get<std::string>());
        if (schema.contains("properties"))
            for (const auto& [key, sub] : schema["properties"].items())
                if (doc.contains(key) &&
                    !check_node(doc[key], sub, where + "/" + key, why))
                    return false;
    }
    if (doc.is_array() && schema.contains("items")) {
        size_t i = 0;
        for (const auto& item : doc) {
            if (!check_node(item, schema["items"], where + "[" + std::to_string(i) + "]", why))
                return false;
            ++i;
        }
    }
    return true;
}

} // namespace

bool validate_schema(const Json& doc, const Json& schema, std::string* why) {
    return check_node(doc, schema, "$", why);
}

std::vector<TableRow> table_rows(uint16_t q, unsigned n, unsigned t, uint64_t brute_budget) {
    std::vector<TableRow> out;
    for (const FamilyRow& fr : family_table(q, n, t, brute_budget)) {
        TableRow row;
        row.family = family_name(fr.family);
        if (fr.report) {
            const BoundReport& r = *fr.report;
            row.params = "q=" + std::to_string(r.q) + ",n=" + std::to_string(r.n) +
                         ",t=" + std::to_string(r.t);
            row.d = std::to_string(r.d);
            row.tau = std::to_string(r.tau);
            row.paper_bound = r.general_bound.str();
            row.gamma_bound = r.gamma_bound.str();
            if (r.brute_force_L) row.brute_force_L = r.brute_force_L->str();
            row.design_bound = r.design_bound.str();
            row.status = r.closed_form_agrees
                             ? fr.status
                             : "closed-form mismatch: " + r.closed_form_bound.str();
        } else {
            row.params = "q=" + std::to_string(q) + ",n=" + std::to_string(n) +
                         ",t=" + std::to_string(t);
            row.status = fr.status;
        }
        out.push_back(std::move(row));
    }
    return out;
}

namespace {

constexpr const char* kColumns[] = {"family",      "params",        "d",
                                    "tau",         "paper_bound",   "gamma_bound",
                                    "brute_force_L", "design_bound", "status"};

std::vector<std::string> cells(const TableRow& r) {
    return {r.family,      r.params,        r.d,            r.tau,   r.paper_bound,
            r.gamma_bound, r.brute_force_L, r.design_bound, r.status};
}

} // namespace

std::string render_table_csv(const std::vector<TableRow>& rows) {
    std::ostringstream out;
    for (size_t i = 0; i < std::size(kColumns); ++i)
        out << (i ? "," : "") << kColumns[i];
    out << "\n";
    for (const TableRow& r : rows) {
        auto c = cells(r);
        for (size_t i = 0; i < c.size(); ++i) {
            std::string cell = c[i];
            if (cell.find(',') != std::string::npos) cell = "\"" + cell + "\"";
            out << (i ? "," : "") << cell;
        }
        out << "\n";
    }
    return out.str();
}

std::string render_table_md(const std::vector<TableRow>& rows) {
    std::ostringstream out;
    out << "|";
    for (const char* c : kColumns) out << " " << c << " |";
    out << "\n|";
    for (size_t i = 0; i < std::size(kColumns); ++i) out << " --- |";
    out << "\n";
    for (const TableRow& r : rows) {
        out << "|";
        for (const std::string& cell : cells(r)) out << " " << cell << " |";
        out << "\n";
    }
    return out.str();
}

Json table_json(const std::vector<TableRow>& rows) {
    Json arr = Json::array();
    for (const TableRow& r : rows) {
        Json j;
        j["family"] = r.family;
        j["params"] = r.params;
        j["d"] = r.d;
        j["tau"] = r.tau;
        j["paper_bound"] = r.paper_bound;
        j["gamma_bound"] = r.gamma_bound;
        j["brute_force_L"] = r.brute_force_L;
        j["design_bound"] = r.design_bound;
        j["status"] = r.status;
        arr.push_back(std::move(j));
    }
    return arr;
}

} // namespace srlab
