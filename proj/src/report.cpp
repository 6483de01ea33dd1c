#include "btrace/report.hpp"

#include <json.hpp>

namespace btrace {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* yesno(bool b) { return b ? "yes" : "no"; }

std::string word_str(const ClassTable& t, const Word& w) { return format_word(t.alphabet(), w); }

std::string fin_label(const ClassTable& t, const FinAbs& u) {
    std::string out = "{";
    bool first = true;
    for (ClassId c : u.classes) {
        if (!first) out += ", ";
        first = false;
        out += class_label(t, c);
    }
    return out + "}";
}

std::string inf_label(const ClassTable& t, const PairTable& pt, const InfAbs& v) {
    std::string out = "{";
    bool first = true;
    for (PairId p : v.pairs) {
        if (!first) out += ", ";
        first = false;
        out += pair_label(t, pt.pair(p));
    }
    return out + "}";
}

std::string witness_str(const ClassTable& t, const Diagnostic& d) {
    if (d.v.empty()) return word_str(t, d.u);
    return word_str(t, d.u) + " (" + word_str(t, d.v) + ")^w";
}

void append_class_lines(std::string& out, const Automaton& a, const ClassTable& t) {
    for (ClassId c = 0; c < t.size(); ++c) {
        out += "class " + std::to_string(c) + ": repr=" + word_str(t, t.representative(c));
        if (t.is_epsilon(c)) out += " epsilon";
        out += std::string(" accepted=") + yesno(class_accepted(a, t, c)) + "\n";
    }
}

void append_pair_lines(std::string& out, const Automaton& a, const ClassTable& t,
                       const PairTable& pt) {
    for (PairId p = 0; p < pt.size(); ++p) {
        out += "pair " + std::to_string(p) + ": " + pair_label(t, pt.pair(p));
        out += std::string(" accepted=") + yesno(pair_accepted(a, t, pt, p)) + "\n";
    }
}

void append_table_lines(std::string& out, const ClassTable& t) {
    for (ClassId x = 0; x < t.size(); ++x)
        for (ClassId y = 0; y < t.size(); ++y)
            out += "table: " + std::to_string(x) + " * " + std::to_string(y) + " = " +
                   std::to_string(t.mul(x, y)) + "\n";
}

void append_dumps(std::string& out, const Automaton& a, const ClassTable& t, const PairTable& pt,
                  const ReportOptions& opt) {
    if (opt.dump_classes) append_class_lines(out, a, t);
    if (opt.dump_pairs) append_pair_lines(out, a, t, pt);
    if (opt.dump_table) append_table_lines(out, t);
}

ordered_json classes_json(const Automaton& a, const ClassTable& t) {
    ordered_json arr = ordered_json::array();
    for (ClassId c = 0; c < t.size(); ++c) {
        arr.push_back({{"id", c},
                       {"repr", word_str(t, t.representative(c))},
                       {"epsilon", t.is_epsilon(c)},
                       {"accepted", class_accepted(a, t, c)}});
    }
    return arr;
}

ordered_json pairs_json(const Automaton& a, const ClassTable& t, const PairTable& pt) {
    ordered_json arr = ordered_json::array();
    for (PairId p = 0; p < pt.size(); ++p) {
        ClassPair cp = pt.pair(p);
        arr.push_back(
            {{"id", p}, {"c", cp.c}, {"d", cp.d}, {"accepted", pair_accepted(a, t, pt, p)}});
    }
    return arr;
}

ordered_json table_json(const ClassTable& t) {
    ordered_json rows = ordered_json::array();
    for (ClassId x = 0; x < t.size(); ++x) {
        ordered_json row = ordered_json::array();
        for (ClassId y = 0; y < t.size(); ++y) row.push_back(t.mul(x, y));
        rows.push_back(std::move(row));
    }
    return rows;
}

ordered_json diagnostics_json(const ClassTable& t, const Verdict& v) {
    ordered_json arr = ordered_json::array();
    for (const Diagnostic& d : v.diagnostics) {
        ordered_json j{{"proc", d.proc}, {"part", d.infinite ? "infinite" : "finite"}};
        if (d.infinite) {
            j["c"] = d.c;
            j["d"] = d.d;
            j["witness"] = {{"prefix", word_str(t, d.u)}, {"period", word_str(t, d.v)}};
        } else {
            j["class"] = d.c;
            j["witness"] = {{"word", word_str(t, d.u)}};
        }
        arr.push_back(std::move(j));
    }
    return arr;
}

}  // namespace

std::string class_label(const ClassTable& t, ClassId c) {
    return "[" + (t.is_epsilon(c) ? std::string("<eps>") : word_str(t, t.representative(c))) + "]";
}

std::string pair_label(const ClassTable& t, ClassPair p) {
    return "(" + class_label(t, p.c) + "," + class_label(t, p.d) + ")";
}

std::string render_text(const Automaton& a, const ClassTable& t, const PairTable& pt,
                        const Verdict& v, const ReportOptions& opt) {
    std::string out;
    out += std::string("verdict: ") + (v.overall ? "pass" : "fail") + "\n";
    out += "entry: " + v.entry + "\n";
    for (const auto& [name, r] : v.procedures) {
        out += "procedure " + name + "\n";
        out += "  finite: " + fin_label(t, r.finite) + "\n";
        out += std::string("  finite_ok: ") + yesno(r.finite_ok) + "\n";
        out += "  infinite: " + inf_label(t, pt, r.infinite) + "\n";
        out += std::string("  infinite_ok: ") + yesno(r.infinite_ok) + "\n";
    }
    for (const Diagnostic& d : v.diagnostics) {
        out += "diagnostic: proc=" + d.proc;
        out += d.infinite ? " pair=" + pair_label(t, ClassPair{d.c, d.d})
                          : " class=" + class_label(t, d.c);
        out += " witness=" + witness_str(t, d) + "\n";
    }
    append_dumps(out, a, t, pt, opt);
    return out;
}

std::string render_json(const Automaton& a, const ClassTable& t, const PairTable& pt,
                        const Verdict& v, const ReportOptions& opt) {
    ordered_json j;
    j["schema"] = 1;
    j["verdict"] = v.overall ? "pass" : "fail";
    j["entry"] = v.entry;
    ordered_json procs = ordered_json::object();
    for (const auto& [name, r] : v.procedures) {
        ordered_json pj;
        pj["finite"] = ordered_json::array();
        for (ClassId c : r.finite.classes) pj["finite"].push_back(c);
        pj["infinite"] = ordered_json::array();
        for (PairId q : r.infinite.pairs) pj["infinite"].push_back(q);
        pj["finite_ok"] = r.finite_ok;
        pj["infinite_ok"] = r.infinite_ok;
        procs[name] = std::move(pj);
    }
    j["procedures"] = std::move(procs);
    j["classes"] = classes_json(a, t);
    j["pairs"] = pairs_json(a, t, pt);
    j["diagnostics"] = diagnostics_json(t, v);
    if (opt.dump_table) j["table"] = table_json(t);
    return j.dump(2) + "\n";
}

std::string render_classes_text(const Automaton& a, const ClassTable& t, const PairTable& pt,
                                const ReportOptions& opt) {
    std::string out;
    append_class_lines(out, a, t);
    append_pair_lines(out, a, t, pt);
    if (opt.dump_table) append_table_lines(out, t);
    return out;
}

std::string render_classes_json(const Automaton& a, const ClassTable& t, const PairTable& pt,
                                const ReportOptions& opt) {
    ordered_json j;
    j["schema"] = 1;
    j["classes"] = classes_json(a, t);
    j["pairs"] = pairs_json(a, t, pt);
    if (opt.dump_table) j["table"] = table_json(t);
    return j.dump(2) + "\n";
}

}  // namespace btrace
