#pragma once

#include "torickit/windows.hpp"

#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace torickit {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------- catalog

struct CatalogEntry {
    std::string name;
    std::string description;
    GITData data;
    std::optional<RatVector> omega_minus;
    std::optional<RatMatrix> specialization;
};

inline std::vector<CatalogEntry> catalog() {
    std::vector<CatalogEntry> out;
    {
        CatalogEntry e{"conifold", "Atiyah flop: Tot O(-1)+O(-1) over P^1, weights (1,1,-1,-1), omega = +1 / -1",
                       GITData(1, IntMatrix{{1, 1, -1, -1}}, {Rational(1)}), RatVector{Rational(-1)}, std::nullopt};
        out.push_back(std::move(e));
    }
    {
        RatMatrix A(2, 1);
        A(0, 0) = 1;
        A(1, 0) = 1;
        CatalogEntry e{"c2-diagonal", "C^2 with trivial K and the diagonal one-dimensional torus", GITData(0, IntMatrix(0, 2), {}),
                       std::nullopt, A};
        out.push_back(std::move(e));
    }
    {
        RatMatrix A(2, 1);
        A(0, 0) = -1;
        A(1, 0) = 1;
        CatalogEntry e{"c2-antidiagonal", "C^2 with the anti-diagonal torus; its weight spaces are infinite dimensional",
                       GITData(0, IntMatrix(0, 2), {}), std::nullopt, A};
        out.push_back(std::move(e));
    }
    {
        CatalogEntry e{"p12", "weighted projective line P(1,2), weights (1,2), omega = 1",
                       GITData(1, IntMatrix{{1, 2}}, {Rational(1)}), std::nullopt, std::nullopt};
        out.push_back(std::move(e));
    }
    {
        CatalogEntry e{"kp2", "local P^2 and its orbifold flop C^3/Z_3, weights (1,1,1,-3), omega = +1 / -1",
                       GITData(1, IntMatrix{{1, 1, 1, -3}}, {Rational(1)}), RatVector{Rational(-1)}, std::nullopt};
        out.push_back(std::move(e));
    }
    return out;
}

inline CatalogEntry catalog_entry(const std::string& name) {
    for (auto& e : catalog())
        if (e.name == name) return e;
    throw InputError("example: unknown example '" + name + "'");
}

// ---------------------------------------------------------------- JSON

inline Json rational_json(const Rational& q) { return to_string(q); }

inline Rational rational_from_json(const Json& j, const std::string& field) {
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const InputError&) {
            throw InputError(field + ": malformed rational '" + j.get<std::string>() + "'");
        }
    }
    if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
    throw InputError(field + ": expected a rational string \"p/q\"");
}

inline Integer integer_from_json(const Json& j, const std::string& field) {
    if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
    throw InputError(field + ": expected an integer");
}

inline Json git_data_json(const GITData& data, const std::optional<RatMatrix>& specialization = {}) {
    Json j;
    j["r"] = data.r;
    j["m"] = data.m;
    Json weights = Json::array();
    for (std::size_t i = 0; i < data.m; ++i) {
        Json col = Json::array();
        for (std::size_t k = 0; k < data.r; ++k) col.push_back(data.D(k, i).get_si());
        weights.push_back(col);
    }
    j["weights"] = weights;
    Json omega = Json::array();
    for (const auto& x : data.omega) omega.push_back(rational_json(x));
    j["omega"] = omega;
    if (specialization) {
        Json rows = Json::array();
        for (std::size_t i = 0; i < specialization->rows(); ++i) {
            Json row = Json::array();
            for (std::size_t k = 0; k < specialization->cols(); ++k) row.push_back(rational_json((*specialization)(i, k)));
            rows.push_back(row);
        }
        j["specialization"] = rows;
    }
    return j;
}

struct ParsedData {
    GITData data;
    std::optional<RatMatrix> specialization;
};

inline ParsedData git_data_from_json(const Json& j) {
    if (!j.is_object()) throw InputError("data: expected a JSON object");
    for (const auto& [key, value] : j.items())
        if (key != "r" && key != "m" && key != "weights" && key != "omega" && key != "specialization")
            throw InputError(key + ": unknown field");
    for (const char* key : {"r", "m", "weights", "omega"})
        if (!j.contains(key)) throw InputError(std::string(key) + ": missing field");
    if (!j["r"].is_number_unsigned()) throw InputError("r: expected a nonnegative integer");
    if (!j["m"].is_number_unsigned()) throw InputError("m: expected a nonnegative integer");
    const std::size_t r = j["r"].get<std::size_t>(), m = j["m"].get<std::size_t>();
    if (!j["weights"].is_array() || j["weights"].size() != m) throw InputError("weights: expected m characters");
    std::vector<IntVector> chars;
    for (const auto& col : j["weights"]) {
        if (!col.is_array() || col.size() != r) throw InputError("weights: each character needs r entries");
        IntVector c;
        for (const auto& x : col) c.push_back(integer_from_json(x, "weights"));
        chars.push_back(std::move(c));
    }
    if (!j["omega"].is_array() || j["omega"].size() != r) throw InputError("omega: expected r entries");
    RatVector omega;
    for (const auto& x : j["omega"]) omega.push_back(rational_from_json(x, "omega"));
    if (m > kMaxCharacters) throw InputError("m: too many characters");
    if (m < r) throw InputError("m: need m >= r");
    ParsedData out{GITData::from_characters(r, chars, omega), std::nullopt};
    if (j.contains("specialization")) {
        const Json& s = j["specialization"];
        if (!s.is_array() || s.size() != m) throw InputError("specialization: expected m rows");
        const std::size_t k = s.empty() ? 0 : s[0].size();
        RatMatrix A(m, k);
        for (std::size_t i = 0; i < m; ++i) {
            if (!s[i].is_array() || s[i].size() != k) throw InputError("specialization: ragged rows");
            for (std::size_t c = 0; c < k; ++c) A(i, c) = rational_from_json(s[i][c], "specialization");
        }
        out.specialization = A;
    }
    return out;
}

inline Json class_json(const EquivClass& E) {
    Json arr = Json::array();
    for (const auto& [l, c] : E.terms()) {
        Json u = Json::array(), s = Json::array();
        for (const auto& x : l.u) u.push_back(x.get_si());
        for (const auto& x : l.s) s.push_back(x.get_si());
        arr.push_back(Json{{"u", u}, {"s", s}, {"coeff", c.get_si()}});
    }
    return arr;
}

inline EquivClass class_from_json(const Json& j, std::size_t r, std::size_t m) {
    if (!j.is_array()) throw InputError("class: expected a list of line classes");
    EquivClass E(r, m);
    for (const auto& item : j) {
        if (!item.is_object()) throw InputError("class: expected objects with u, s, coeff");
        for (const auto& [key, value] : item.items())
            if (key != "u" && key != "s" && key != "coeff") throw InputError(key + ": unknown field");
        if (!item.contains("u") || !item["u"].is_array() || item["u"].size() != r) throw InputError("u: expected r entries");
        if (!item.contains("s") || !item["s"].is_array() || item["s"].size() != m) throw InputError("s: expected m entries");
        IntVector u, s;
        for (const auto& x : item["u"]) u.push_back(integer_from_json(x, "u"));
        for (const auto& x : item["s"]) s.push_back(integer_from_json(x, "s"));
        const Integer coeff = item.contains("coeff") ? integer_from_json(item["coeff"], "coeff") : Integer(1);
        E.add(LineClass{u, s}, coeff);
    }
    return E;
}

/// "O(a)", "2*O(1)+O(-1)", inline JSON, or a path to a JSON file.
inline EquivClass parse_class(const std::string& spec, std::size_t r, std::size_t m) {
    std::string text = spec;
    text.erase(std::remove(text.begin(), text.end(), ' '), text.end());
    if (text.empty()) throw InputError("class: empty class spec");
    if (text.front() == '[') {
        try {
            return class_from_json(Json::parse(text), r, m);
        } catch (const Json::parse_error& e) {
            throw InputError(std::string("class: ") + e.what());
        }
    }
    if (text.find("O(") == std::string::npos) {
        std::ifstream in(spec);
        if (!in) throw InputError("class: cannot open '" + spec + "'");
        try {
            return class_from_json(Json::parse(in), r, m);
        } catch (const Json::parse_error& e) {
            throw InputError(std::string("class: ") + e.what());
        }
    }
    if (r != 1 && !(r == 0 && text == "O(0)")) throw InputError("class: O(a) notation needs rank-one data");
    EquivClass E(r, m);
    std::size_t pos = 0;
    while (pos < text.size()) {
        long sign = 1;
        if (text[pos] == '+' || text[pos] == '-') sign = text[pos++] == '-' ? -1 : 1;
        long mult = 1;
        const auto star = text.find('*', pos), open = text.find("O(", pos);
        if (open == std::string::npos) throw InputError("class: malformed spec '" + spec + "'");
        if (star != std::string::npos && star < open) {
            try {
                mult = std::stol(text.substr(pos, star - pos));
            } catch (const std::exception&) {
                throw InputError("class: malformed multiplier in '" + spec + "'");
            }
        } else if (open != pos) {
            throw InputError("class: malformed spec '" + spec + "'");
        }
        const auto close = text.find(')', open);
        if (close == std::string::npos) throw InputError("class: missing ')' in '" + spec + "'");
        long a = 0;
        try {
            std::size_t used = 0;
            a = std::stol(text.substr(open + 2, close - open - 2), &used);
            if (used != close - open - 2) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw InputError("class: malformed twist in '" + spec + "'");
        }
        IntVector u(r, Integer(a));
        E.add(LineClass{u, IntVector(m, Integer(0))}, Integer(sign * mult));
        pos = close + 1;
    }
    return E;
}

inline RatVector parse_rational_list(const std::string& text, const std::string& field) {
    RatVector out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(parse_rational(item));
        } catch (const InputError&) {
            throw InputError(field + ": malformed rational '" + item + "'");
        }
    }
    return out;
}

// ---------------------------------------------------------------- formatting

inline std::string format_row(const std::vector<Integer>& row) {
    std::string s = "(";
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + row[i].get_str();
    return s + ")";
}

inline std::string format_vector(const RatVector& v) { return "(" + join_rationals(v) + ")"; }

/// One-variable series as "l^-2 - l^-1 + 5/12 - 1/12*l + 1/240*l^2".
inline std::string univariate_series_string(const GradedSeries& s) {
    std::string out;
    for (const auto& [n, f] : s.pieces()) {
        const CycNumber c = s.univariate_coefficient(n);
        std::string coeff;
        bool negative = false;
        if (c.is_rational()) {
            Rational q = c.to_rational();
            negative = q < 0;
            if (negative) q = -q;
            if (q != 1 || n == 0) coeff = to_string(q);
        } else {
            coeff = c.to_string();
        }
        std::string mono = n == 0 ? "" : n == 1 ? "l" : "l^" + std::to_string(n);
        if (out.empty()) out += negative ? "-" : "";
        else out += negative ? " - " : " + ";
        out += coeff + (!coeff.empty() && !mono.empty() ? "*" : "") + mono;
    }
    return out.empty() ? "0" : out;
}

inline std::string piece_string(const GradedSeries& s, int n) {
    if (s.nvars() == 1) {
        GradedSeries one(1, s.order());
        one.add_piece(n, s.piece(n));
        return univariate_series_string(one);
    }
    return s.piece(n).to_string();
}

// ---------------------------------------------------------------- jobs

struct JobSpec {
    std::string command;
    std::optional<std::string> data_path;
    std::optional<std::string> example;
    std::optional<int> order;
    std::optional<std::string> omega_plus;
    std::optional<std::string> omega_minus;
    std::optional<std::string> class_spec;
    std::optional<std::pair<std::string, std::string>> check_fm;
    std::optional<std::string> lift;
    long window_base = 0;
    bool json = false;
};

struct RunResult {
    int exit_code = 0;
    std::string report;
};

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> names = {"validate", "anticones", "fixed-points", "euler", "hrr-check",
                                                   "wallcross", "windows", "fm-check", "catalog"};
    return names;
}

/// Series order: explicit flag, then TORICKIT_TRUNCATION, then 6.
inline int default_truncation_order() {
    if (const char* env = std::getenv("TORICKIT_TRUNCATION")) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(env, &used);
            if (used == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
        throw InputError("TORICKIT_TRUNCATION: expected an integer");
    }
    return 6;
}

namespace detail {

struct Loaded {
    GITData data;
    std::optional<RatMatrix> specialization;
    std::optional<RatVector> omega_minus;
};

inline Loaded load_data(const JobSpec& job) {
    if (job.data_path && job.example) throw InputError("data: pass either --data or --example, not both");
    Loaded out;
    if (job.example) {
        const auto e = catalog_entry(*job.example);
        out = {e.data, e.specialization, e.omega_minus};
    } else if (job.data_path) {
        std::ifstream in(*job.data_path);
        if (!in) throw InputError("data: cannot open '" + *job.data_path + "'");
        Json j;
        try {
            j = Json::parse(in);
        } catch (const Json::parse_error& e) {
            throw InputError(std::string("data: ") + e.what());
        }
        auto parsed = git_data_from_json(j);
        out = {parsed.data, parsed.specialization, std::nullopt};
    } else {
        throw InputError("data: one of --data or --example is required");
    }
    if (job.omega_plus) {
        auto w = parse_rational_list(*job.omega_plus, "omega-plus");
        if (w.size() != out.data.r) throw InputError("omega-plus: expected r entries");
        out.data = out.data.with_omega(std::move(w));
    }
    if (job.omega_minus) {
        auto w = parse_rational_list(*job.omega_minus, "omega-minus");
        if (w.size() != out.data.r) throw InputError("omega-minus: expected r entries");
        out.omega_minus = std::move(w);
    }
    return out;
}

inline WallCrossing crossing_of(const Loaded& in) {
    if (!in.omega_minus) throw InputError("omega-minus: required for a wall crossing");
    try {
        return make_wall_crossing(in.data, in.data.omega, *in.omega_minus);
    } catch (const InputError&) {
        throw;
    } catch (const Error& e) {
        throw InputError(std::string("omega-plus/omega-minus: ") + e.what());
    }
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline RunResult run_catalog(const JobSpec& job) {
    Json arr = Json::array();
    std::string text;
    for (const auto& e : catalog()) {
        arr.push_back(Json{{"name", e.name}, {"description", e.description}, {"data", git_data_json(e.data, e.specialization)}});
        text += e.name + ": " + e.description + "\n";
    }
    return {0, job.json ? dump(arr) : text};
}

inline RunResult run_validate(const JobSpec& job, const Loaded& in) {
    const auto rep = validate(in.data);
    Json j{{"whole_set_is_anticone", rep.whole_set_is_anticone}, {"anticones_span", rep.anticones_span},
           {"failures", rep.failures}, {"ok", rep.ok()}};
    std::string text = std::string("whole set is an anticone: ") + (rep.whole_set_is_anticone ? "pass" : "fail") +
                       "\nanticones span: " + (rep.anticones_span ? "pass" : "fail") + "\n";
    for (const auto& f : rep.failures) text += "  " + f + "\n";
    text += rep.ok() ? "valid\n" : "invalid\n";
    return {rep.ok() ? 0 : 1, job.json ? dump(j) : text};
}

inline RunResult run_anticones(const JobSpec& job, const Loaded& in) {
    const auto all = anticones(in.data);
    const auto mins = minimal_elements(all);
    Json j;
    j["anticones"] = Json::array();
    for (auto I : all) j["anticones"].push_back(format_set(I));
    j["minimal"] = Json::array();
    for (auto I : mins) j["minimal"].push_back(format_set(I));
    j["locus"] = format_locus(mins, in.data.m);
    std::string text = "anticones:";
    for (auto I : all) text += " " + format_set(I);
    text += "\nminimal:";
    for (auto I : mins) text += " " + format_set(I);
    text += "\nsemistable locus: " + format_locus(mins, in.data.m) + "\n";
    if (!on_wall(in.data) && in.data.r > 0) {
        const auto ch = chamber_of(in.data);
        j["chamber"] = ch.to_string();
        text += "chamber: " + ch.to_string() + "\n";
    }
    return {0, job.json ? dump(j) : text};
}

inline RunResult run_fixed_points(const JobSpec& job, const Loaded& in) {
    const auto rep = validate(in.data);
    if (!rep.ok()) throw InputError("data: " + rep.failures.front());
    Json arr = Json::array();
    std::string text;
    for (const auto& fp : all_fixed_point_data(in.data)) {
        Json weights = Json::array(), group = Json::array(), angles = Json::array();
        text += "fixed point " + format_set(fp.delta) + "  |G| = " + fp.order.get_str() + "\n  weights:";
        for (const auto& w : fp.weights) {
            weights.push_back(FracMonomial(w).to_string());
            text += " " + FracMonomial(w).to_string();
        }
        text += "\n";
        for (std::size_t g = 0; g < fp.group.size(); ++g) {
            Json a = Json::array();
            for (const auto& t : fp.angles[g]) a.push_back(rational_json(t));
            group.push_back(format_vector(fp.group[g]));
            angles.push_back(a);
            text += "  g = " + format_vector(fp.group[g]) + "  angles " + format_vector(fp.angles[g]) + "\n";
        }
        arr.push_back(Json{{"delta", format_set(fp.delta)}, {"order", fp.order.get_si()}, {"weights", weights},
                           {"group", group}, {"angles", angles}});
    }
    return {0, job.json ? dump(arr) : text};
}

inline EquivClass job_class(const JobSpec& job, const GITData& data) {
    if (!job.class_spec) return EquivClass::structure_sheaf(data.r, data.m);
    return parse_class(*job.class_spec, data.r, data.m);
}

inline RunResult run_euler(const JobSpec& job, const Loaded& in) {
    const EquivClass E = job_class(job, in.data);
    EulerOptions opt;
    opt.specialization = in.specialization;
    RationalCharacter chi(in.data.m);
    try {
        chi = euler_characteristic(in.data, E, opt);
    } catch (const InputError&) {
        throw;
    } catch (const Error& e) {
        Json j{{"error", e.what()}};
        return {1, job.json ? dump(j) : std::string("refused: ") + e.what() + "\n"};
    }
    const auto cleared = clear_denominators(chi);
    const bool rational = cleared.numerator.has_rational_coefficients() && cleared.numerator.has_integral_exponents();
    std::string den;
    for (const auto& f : cleared.denominator) den += f.to_string();
    Json j{{"class", class_json(E)},
           {"terms", chi.to_string()},
           {"numerator", cleared.numerator.to_string()},
           {"denominator", den.empty() ? "1" : den},
           {"rational", rational}};
    std::string text = "chi(" + E.to_string() + ")\n  = " + cleared.numerator.to_string() + "\n    / " +
                       (den.empty() ? "1" : den) + "\ncyclotomic parts cancel: " + (rational ? "yes" : "no") + "\n";
    return {rational ? 0 : 1, job.json ? dump(j) : text};
}

inline RunResult run_hrr(const JobSpec& job, const Loaded& in) {
    const EquivClass E = job_class(job, in.data);
    const int order = job.order ? *job.order : default_truncation_order();
    HrrReport rep{GradedSeries(0, 0), GradedSeries(0, 0), false, std::nullopt};
    try {
        rep = hrr_check(in.data, E, order, in.specialization);
    } catch (const InputError&) {
        throw;
    } catch (const Error& e) {
        Json j{{"error", e.what()}};
        return {1, job.json ? dump(j) : std::string("refused: ") + e.what() + "\n"};
    }
    Json lhs = Json::object(), rhs = Json::object();
    std::string text;
    int lo = order;
    if (auto l = rep.lhs.lowest_degree()) lo = std::min(lo, *l);
    if (auto l = rep.rhs.lowest_degree()) lo = std::min(lo, *l);
    for (int n = lo; n <= order; ++n) {
        const std::string a = piece_string(rep.lhs, n), b = piece_string(rep.rhs, n);
        lhs[std::to_string(n)] = a;
        rhs[std::to_string(n)] = b;
        text += "degree " + std::to_string(n) + ": " + a + "  |  " + b + (rep.lhs.piece(n) == rep.rhs.piece(n) ? "" : "  MISMATCH") + "\n";
    }
    Json j{{"lhs", lhs}, {"rhs", rhs}, {"equal", rep.equal}};
    j["first_mismatch_degree"] = rep.first_mismatch_degree ? Json(*rep.first_mismatch_degree) : Json(nullptr);
    if (rep.lhs.nvars() == 1) text += "expansion: " + univariate_series_string(rep.lhs) + " + O(l^" + std::to_string(order + 1) + ")\n";
    text += rep.equal ? "equal through degree " + std::to_string(order) + "\n"
                      : "first mismatch at degree " + std::to_string(*rep.first_mismatch_degree) + "\n";
    return {rep.equal ? 0 : 1, job.json ? dump(j) : text};
}

inline Json loci_json(const SevenLoci& loci, std::size_t n) {
    Json j = Json::object();
    for (std::size_t i = 0; i < 7; ++i) j[std::string(SevenLoci::names[i])] = format_locus(loci.generators[i], n);
    return j;
}

inline RunResult run_wallcross(const JobSpec& job, const Loaded& in) {
    const WallCrossing wc = crossing_of(in);
    const auto eta = eta_invariants(wc);
    const ExtendedGIT ext = extend(wc);
    const SevenLoci loci = seven_loci(wc, ext);
    const auto direct = seven_loci_direct(ext, loci);
    bool loci_agree = true;
    for (std::size_t i = 0; i < 7; ++i) loci_agree = loci_agree && loci.generators[i] == direct[i];

    Json rows = Json::array();
    std::string text = "wall: " + wc.wall_string() + "\ne: " + format_row(wc.e) + "\ncrossing point: " +
                       format_vector(wc.omega_zero) + "\ncrepant: " + (wc.crepant ? "true" : "false") +
                       "\neta: (" + eta.first.get_str() + "," + eta.second.get_str() + ")\nextended weight matrix:\n";
    for (std::size_t i = 0; i < ext.data.D.rows(); ++i) {
        Json row = Json::array();
        for (const auto& x : ext.data.D.row(i)) row.push_back(x.get_si());
        rows.push_back(row);
        text += "  " + format_row(ext.data.D.row(i)) + "\n";
    }
    text += "chambers:\n  C+ " + ext.chamber_plus.to_string() + "\n  C- " + ext.chamber_minus.to_string() + "\n  C~ " +
            ext.chamber_tilde.to_string() + "\nsemistable loci:\n";
    for (std::size_t i = 0; i < 7; ++i)
        text += "  " + std::string(SevenLoci::names[i]) + " " + format_locus(loci.generators[i], wc.base.m + 1) + "\n";
    text += std::string("loci agree with direct GIT: ") + (loci_agree ? "yes" : "no") + "\n";

    Json e = Json::array();
    for (const auto& x : wc.e) e.push_back(x.get_si());
    Json j{{"wall", wc.wall_string()},
           {"e", e},
           {"crepant", wc.crepant},
           {"eta", {eta.first.get_si(), eta.second.get_si()}},
           {"extended_weights", rows},
           {"chambers",
            {{"plus", ext.chamber_plus.to_string()}, {"minus", ext.chamber_minus.to_string()}, {"tilde", ext.chamber_tilde.to_string()}}},
           {"loci", loci_json(loci, wc.base.m + 1)},
           {"loci_agree", loci_agree}};
    return {loci_agree ? 0 : 1, job.json ? dump(j) : text};
}

// Twists O(a) of rank-one data whose e-weight lies in [k, k + eta).
inline std::vector<long> window_twists(const WallCrossing& wc, long k) {
    const long eta = eta_invariants(wc).first.get_si();
    const long e = wc.e.front().get_si();
    std::vector<long> out;
    for (long w = k; w < k + eta; ++w)
        if (w % e == 0) out.push_back(w / e);
    std::sort(out.begin(), out.end());
    return out;
}

inline RunResult run_windows(const JobSpec& job, const Loaded& in, bool fm_only) {
    const WallCrossing wc = crossing_of(in);
    if (!wc.crepant) throw InputError("omega-plus/omega-minus: the wall is not crepant");
    const auto [down, up] = kn_strata(wc);
    const Integer k = job.window_base;
    Json j;
    std::string text;
    bool ok = true;
    if (!fm_only) {
        j["strata"] = Json::array();
        for (const auto* s : {&down, &up}) {
            j["strata"].push_back(Json{{"lambda", format_row(s->lambda)},
                                       {"fixed", format_set(s->fixed_coords)},
                                       {"blade", format_set(s->blade_coords)},
                                       {"eta", s->eta.get_si()}});
            text += "stratum lambda=" + format_row(s->lambda) + " Z=C^" + format_set(s->fixed_coords) + " S=C^" +
                    format_set(s->blade_coords) + " eta=" + s->eta.get_str() + "\n";
        }
        const Integer hi = k + down.eta;
        j["window"] = "[" + k.get_str() + "," + hi.get_str() + ")";
        text += "window: [" + k.get_str() + "," + hi.get_str() + ")\n";
    }

    const ExtendedGIT ext = extend(wc);
    if (job.lift) {
        const EquivClass E = parse_class(*job.lift, wc.base.r, wc.base.m);
        const EquivClass lifted = window_lift(wc, E, k);
        const bool agrees = same_restrictions(wc.minus(), E, lifted);
        ok = ok && agrees;
        j["lift"] = {{"input", class_json(E)}, {"output", class_json(lifted)}, {"restricts_to_input", agrees}};
        text += "lift of " + E.to_string() + ":\n  " + lifted.to_string() + "\n  agrees on X-: " + (agrees ? "yes" : "no") + "\n";
    }

    std::vector<std::pair<EquivClass, EquivClass>> pairs;
    if (job.check_fm) {
        pairs.emplace_back(parse_class(job.check_fm->first, wc.base.r, wc.base.m),
                           parse_class(job.check_fm->second, wc.base.r, wc.base.m));
    } else if (fm_only) {
        if (wc.base.r != 1) throw InputError("check-fm: give explicit classes for data of rank > 1");
        for (long a : window_twists(wc, k.get_si()))
            for (long b = -1; b <= 1; ++b) pairs.emplace_back(EquivClass::twist(wc.base.m, a), EquivClass::twist(wc.base.m, b));
    }
    if (!pairs.empty()) {
        j["fm"] = Json::array();
        for (const auto& [L, M] : pairs) {
            const auto rep = fm_euler_check(wc, ext, L, M, k);
            ok = ok && rep.equal;
            j["fm"].push_back(Json{{"L", class_json(L)}, {"M", class_json(M)}, {"equal", rep.equal}});
            text += "FM check L=" + L.to_string() + " M=" + M.to_string() + ": " + (rep.equal ? "equal" : "DIFFERENT") + "\n";
        }
    }
    j["ok"] = ok;
    return {ok ? 0 : 1, job.json ? dump(j) : text};
}

}  // namespace detail

/// Runs one job. Exit code 0 on success, 1 on a failed check, 2 on bad input.
inline RunResult run(const JobSpec& job) {
    try {
        if (std::find(commands().begin(), commands().end(), job.command) == commands().end())
            throw InputError("command: unknown command '" + job.command + "'");
        if (job.command == "catalog") return detail::run_catalog(job);
        const auto in = detail::load_data(job);
        if (job.command == "validate") return detail::run_validate(job, in);
        if (job.command == "anticones") return detail::run_anticones(job, in);
        if (job.command == "fixed-points") return detail::run_fixed_points(job, in);
        if (job.command == "euler") return detail::run_euler(job, in);
        if (job.command == "hrr-check") return detail::run_hrr(job, in);
        if (job.command == "wallcross") return detail::run_wallcross(job, in);
        if (job.command == "windows") return detail::run_windows(job, in, false);
        return detail::run_windows(job, in, true);
    } catch (const InputError& e) {
        return {2, std::string("input error: ") + e.what() + "\n"};
    } catch (const Error& e) {
        return {1, std::string("error: ") + e.what() + "\n"};
    }
}

}  // namespace torickit
