#pragma once

#include <string>

#include "btrace/inference.hpp"
#include "btrace/lattice.hpp"

namespace btrace {

struct ReportOptions {
    bool dump_classes = false;
    bool dump_pairs = false;
    bool dump_table = false;
};

/// Plain-text verdict report: verdict, entry, per-procedure abstractions and
/// checks, diagnostics, then any requested dumps. Deterministic byte-for-byte.
std::string render_text(const Automaton& a, const ClassTable& t, const PairTable& pt,
                        const Verdict& v, const ReportOptions& opt = {});

/// JSON verdict report (schema 1): verdict, entry, procedures, the class and
/// pair dictionaries with representatives, diagnostics; the multiplication
/// table only when requested. Deterministic byte-for-byte.
std::string render_json(const Automaton& a, const ClassTable& t, const PairTable& pt,
                        const Verdict& v, const ReportOptions& opt = {});

/// Dump of the class monoid and pair set alone: one line per class and per
/// pair, plus the multiplication table when requested.
std::string render_classes_text(const Automaton& a, const ClassTable& t, const PairTable& pt,
                                const ReportOptions& opt = {});

/// JSON counterpart of render_classes_text (schema 1).
std::string render_classes_json(const Automaton& a, const ClassTable& t, const PairTable& pt,
                                const ReportOptions& opt = {});

/// `[repr]` notation for a class; `([c],[d])` for a pair.
std::string class_label(const ClassTable& t, ClassId c);
std::string pair_label(const ClassTable& t, ClassPair p);

}  // namespace btrace
