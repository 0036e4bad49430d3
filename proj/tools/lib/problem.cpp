#include "problem.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "noether/error.hpp"

namespace noether::cli {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

bool is_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

struct Entry {
    std::string key;
    std::string value;
    int line;
};

class Reader {
public:
    explicit Reader(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(int line, const std::string& msg) const {
        throw Error(ErrorKind::InputError, source_ + ":" + std::to_string(line) + ": " + msg);
    }

    int to_int(const Entry& e) const {
        int v = 0;
        const auto* end = e.value.data() + e.value.size();
        auto [p, ec] = std::from_chars(e.value.data(), end, v);
        if (ec != std::errc() || p != end) fail(e.line, "expected an integer for '" + e.key + "'");
        return v;
    }

    double to_double(const Entry& e, const std::string& text) const {
        if (text.find('/') != std::string::npos) {
            try {
                return Rational::parse(text).to_double();
            } catch (const Error&) {
                fail(e.line, "malformed number '" + text + "' for '" + e.key + "'");
            }
        }
        double v = 0;
        const auto* end = text.data() + text.size();
        auto [p, ec] = std::from_chars(text.data(), end, v);
        if (ec != std::errc() || p != end) fail(e.line, "malformed number '" + text + "' for '" + e.key + "'");
        return v;
    }

    bool to_bool(const Entry& e) const {
        if (e.value == "true") return true;
        if (e.value == "false") return false;
        fail(e.line, "expected true or false for '" + e.key + "'");
    }

    const std::string& source() const { return source_; }

private:
    std::string source_;
};

}  // namespace

ProblemFile parse_problem(const std::string& text, const std::string& source) {
    Reader rd(source);
    ProblemFile pf;
    pf.source = source;

    // Logical lines: strip comments, join backslash continuations.
    std::vector<std::pair<std::string, int>> lines;
    {
        std::stringstream ss(text);
        std::string raw;
        int lineno = 0;
        std::string pending;
        int pending_line = 0;
        while (std::getline(ss, raw)) {
            ++lineno;
            if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
            std::string t = trim(raw);
            if (pending.empty()) pending_line = lineno;
            if (!t.empty() && t.back() == '\\') {
                t.pop_back();
                pending += t + " ";
                continue;
            }
            pending += t;
            if (!trim(pending).empty()) lines.emplace_back(trim(pending), pending_line);
            pending.clear();
        }
        if (!trim(pending).empty()) rd.fail(pending_line, "continuation at end of file");
    }

    if (lines.empty()) rd.fail(1, "empty problem file");
    {
        const auto& [first, line] = lines.front();
        const auto eq = first.find('=');
        if (eq == std::string::npos || trim(first.substr(0, eq)) != "format") {
            rd.fail(line, "file must start with 'format = 1'");
        }
        if (trim(first.substr(eq + 1)) != "1") rd.fail(line, "unsupported format version");
    }

    std::map<std::string, std::vector<Entry>> sections;
    std::map<std::string, int> section_line;
    std::string current;
    const std::set<std::string> known{"problem", "parameters", "ansatz", "numeric", "transform", "expected"};
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& [l, line] = lines[i];
        if (l.front() == '[') {
            if (l.back() != ']') rd.fail(line, "malformed section header");
            current = trim(l.substr(1, l.size() - 2));
            if (!known.contains(current)) rd.fail(line, "unknown section [" + current + "]");
            if (section_line.contains(current)) rd.fail(line, "duplicate section [" + current + "]");
            section_line[current] = line;
            sections[current];
            continue;
        }
        const auto eq = l.find('=');
        if (eq == std::string::npos) rd.fail(line, "expected 'key = value'");
        if (current.empty()) rd.fail(line, "entry outside of a section");
        Entry e{trim(l.substr(0, eq)), trim(l.substr(eq + 1)), line};
        if (e.key.empty()) rd.fail(line, "missing key");
        if (e.value.empty()) rd.fail(line, "missing value for '" + e.key + "'");
        sections[current].push_back(std::move(e));
    }

    // Checks keys and enforces single occurrence except for `repeatable`.
    auto entries = [&](const std::string& sec, const std::set<std::string>& allowed,
                       const std::set<std::string>& repeatable) {
        std::map<std::string, std::vector<Entry>> out;
        auto it = sections.find(sec);
        if (it == sections.end()) return out;
        for (const auto& e : it->second) {
            if (!allowed.contains(e.key)) rd.fail(e.line, "unknown key '" + e.key + "' in [" + sec + "]");
            auto& slot = out[e.key];
            if (!slot.empty() && !repeatable.contains(e.key)) rd.fail(e.line, "duplicate key '" + e.key + "'");
            slot.push_back(e);
        }
        return out;
    };

    if (!sections.contains("problem")) rd.fail(lines.front().second, "missing [problem] section");
    const int problem_line = section_line["problem"];
    auto prob = entries("problem", {"name", "coordinates", "order", "lagrangian"}, {});
    for (const char* k : {"coordinates", "order", "lagrangian"}) {
        if (!prob.contains(k)) rd.fail(problem_line, std::string("[problem] is missing '") + k + "'");
    }
    pf.name = prob.contains("name") ? prob["name"][0].value : source;
    const std::set<std::string> reserved{"t", "D", "sin", "cos", "exp"};
    for (const auto& c : split_list(prob["coordinates"][0].value)) {
        const int line = prob["coordinates"][0].line;
        if (!is_identifier(c) || reserved.contains(c)) rd.fail(line, "invalid coordinate name '" + c + "'");
        if (std::find(pf.coordinates.begin(), pf.coordinates.end(), c) != pf.coordinates.end()) {
            rd.fail(line, "duplicate coordinate '" + c + "'");
        }
        pf.coordinates.push_back(c);
    }
    pf.order = rd.to_int(prob["order"][0]);
    if (pf.order < 1) rd.fail(prob["order"][0].line, "order must be >= 1");
    pf.lagrangian = {prob["lagrangian"][0].value, prob["lagrangian"][0].line};

    if (auto it = sections.find("parameters"); it != sections.end()) {
        for (const auto& e : it->second) {
            if (!is_identifier(e.key) || reserved.contains(e.key)) rd.fail(e.line, "invalid parameter name '" + e.key + "'");
            if (std::find(pf.coordinates.begin(), pf.coordinates.end(), e.key) != pf.coordinates.end()) {
                rd.fail(e.line, "parameter '" + e.key + "' shadows a coordinate");
            }
            if (pf.parameters.contains(e.key)) rd.fail(e.line, "duplicate parameter '" + e.key + "'");
            try {
                pf.parameters.emplace(e.key, Rational::parse(e.value));
            } catch (const Error&) {
                rd.fail(e.line, "parameter '" + e.key + "' must be a rational number");
            }
        }
    }

    auto ans = entries("ansatz",
                       {"zeta_degree", "eta_t_degree", "eta_x_degree", "inverse_coords", "zeta_depends_on_x",
                        "frequencies", "gauge_t_degree", "gauge_x_degree", "gauge_v_degree"},
                       {});
    auto& cfg = pf.ansatz;
    auto set_int = [&](const char* key, int& field) {
        if (ans.contains(key)) field = rd.to_int(ans[key][0]);
    };
    set_int("zeta_degree", cfg.zeta_degree);
    set_int("eta_t_degree", cfg.eta_t_degree);
    set_int("eta_x_degree", cfg.eta_x_degree);
    set_int("gauge_t_degree", cfg.gauge_t_degree);
    set_int("gauge_x_degree", cfg.gauge_x_degree);
    set_int("gauge_v_degree", cfg.gauge_v_degree);
    if (ans.contains("inverse_coords")) cfg.inverse_coords = rd.to_bool(ans["inverse_coords"][0]);
    if (ans.contains("zeta_depends_on_x")) cfg.zeta_depends_on_x = rd.to_bool(ans["zeta_depends_on_x"][0]);
    if (ans.contains("frequencies")) {
        const Entry& e = ans["frequencies"][0];
        if (e.value == "auto") {
            cfg.frequencies.reset();
        } else if (e.value == "none") {
            cfg.frequencies = std::vector<Rational>{};
        } else {
            std::vector<Rational> fs;
            for (const auto& item : split_list(e.value)) {
                try {
                    const Expr v = parse(item, {}, pf.parameters);
                    const auto c = v.constant_value();
                    if (!c) throw Error(ErrorKind::InputError, "not constant");
                    fs.push_back(*c);
                } catch (const Error&) {
                    rd.fail(e.line, "frequency '" + item + "' is not a rational constant");
                }
            }
            cfg.frequencies = std::move(fs);
        }
    } else {
        cfg.frequencies.reset();
    }

    if (sections.contains("numeric")) {
        auto num = entries("numeric", {"initial", "t_end", "step", "tol_abs", "tol_rel"}, {"initial"});
        NumericBlock nb;
        for (const auto& e : num["initial"]) {
            std::vector<double> state;
            for (const auto& item : split_list(e.value)) state.push_back(rd.to_double(e, item));
            nb.initial.push_back(std::move(state));
        }
        if (nb.initial.empty()) rd.fail(section_line["numeric"], "[numeric] needs at least one 'initial'");
        if (num.contains("t_end")) nb.t_end = rd.to_double(num["t_end"][0], num["t_end"][0].value);
        if (num.contains("step")) nb.step = rd.to_double(num["step"][0], num["step"][0].value);
        if (num.contains("tol_abs")) nb.tol_abs = rd.to_double(num["tol_abs"][0], num["tol_abs"][0].value);
        if (num.contains("tol_rel")) nb.tol_rel = rd.to_double(num["tol_rel"][0], num["tol_rel"][0].value);
        if (!(nb.step > 0)) rd.fail(section_line["numeric"], "step must be positive");
        if (!(nb.t_end >= 0)) rd.fail(section_line["numeric"], "t_end must be >= 0");
        pf.numeric = std::move(nb);
    }

    if (sections.contains("transform")) {
        auto tr = entries("transform",
                          {"primed_coordinates", "t_of", "x_of", "gauge", "F", "cyclic", "expected_lagrangian",
                           "expected_equivalent", "expected_momentum", "integral"},
                          {"x_of", "integral"});
        TransformBlock tb;
        tb.line = section_line["transform"];
        for (const char* k : {"primed_coordinates", "t_of", "x_of", "cyclic"}) {
            if (!tr.contains(k)) rd.fail(tb.line, std::string("[transform] is missing '") + k + "'");
        }
        for (const auto& c : split_list(tr["primed_coordinates"][0].value)) {
            if (!is_identifier(c) || reserved.contains(c) || pf.parameters.contains(c)) {
                rd.fail(tr["primed_coordinates"][0].line, "invalid primed coordinate name '" + c + "'");
            }
            tb.primed_coordinates.push_back(c);
        }
        if (tb.primed_coordinates.size() != pf.coordinates.size()) {
            rd.fail(tr["primed_coordinates"][0].line, "need one primed coordinate per coordinate");
        }
        tb.t_of = {tr["t_of"][0].value, tr["t_of"][0].line};
        for (const auto& e : tr["x_of"]) tb.x_of.push_back({e.value, e.line});
        if (tb.x_of.size() != pf.coordinates.size()) rd.fail(tb.line, "need one 'x_of' per coordinate");
        tb.cyclic = tr["cyclic"][0].value;
        if (std::find(tb.primed_coordinates.begin(), tb.primed_coordinates.end(), tb.cyclic) ==
            tb.primed_coordinates.end()) {
            rd.fail(tr["cyclic"][0].line, "'cyclic' must name a primed coordinate");
        }
        auto opt = [&](const char* k) -> std::optional<Located> {
            if (!tr.contains(k)) return std::nullopt;
            return Located{tr[k][0].value, tr[k][0].line};
        };
        tb.gauge = opt("gauge");
        tb.lift = opt("F");
        tb.expected_lagrangian = opt("expected_lagrangian");
        tb.expected_equivalent = opt("expected_equivalent");
        tb.expected_momentum = opt("expected_momentum");
        for (const auto& e : tr["integral"]) tb.integrals.push_back({e.value, e.line});
        pf.transform = std::move(tb);
    }

    auto exp = entries("expected", {"generators", "integral"}, {"integral"});
    if (exp.contains("generators")) pf.expected_generators = rd.to_int(exp["generators"][0]);
    for (const auto& e : exp["integral"]) pf.expected_integrals.push_back({e.value, e.line});
    return pf;
}

ProblemFile load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InputError, "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_problem(ss.str(), path);
}

Expr parse_field(const ProblemFile& problem, const Located& field, const std::vector<std::string>& coords) {
    try {
        return parse(field.text, coords, problem.parameters);
    } catch (const Error& e) {
        throw Error(e.kind(), problem.source + ":" + std::to_string(field.line) + ": " + e.detail());
    }
}

}  // namespace noether::cli
