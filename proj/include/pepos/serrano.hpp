#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pepos/base.hpp"
#include "pepos/bundle.hpp"
#include "pepos/certificates.hpp"
#include "pepos/cones.hpp"
#include "pepos/pbundle.hpp"
#include "pepos/rational.hpp"

namespace pepos {

enum class Verdict { verified, refuted_on_families, hypotheses_unmet, unknown };
std::string to_string(Verdict v);

/// An instance of the conjecture for D = m xi + pi^* N on P(E) -> X.
struct SerranoProblem {
    BaseVariety base;
    BundleDescriptor bundle;
    Int m = 1;
    std::vector<Rational> n_class;
    std::optional<std::string> route; // theorem id; empty = direct criterion
    CertificateStore certificates;

    int pe_dim() const { return base.dim + bundle.rank - 1; }
    /// dim P(E) + 2 = n + r + 1, the bound the paper proves.
    Rational paper_threshold() const { return Rational(pe_dim() + 2); }

    void validate() const;
};

/// One requirement "poly(t) > 0": tm - r > 0 and, per family,
/// (tm - r) mu_min(E|_C) + (K_X + det E + t N) . C > 0.
struct ConditionLine {
    std::string label;
    LinPoly poly;
};

struct ThresholdResult {
    bool feasible = true;
    std::optional<Rational> t0; // inf { t : all conditions hold strictly };
                                // absent on theorem-only routes
    bool attained = false;      // strict conditions with positive slope: never
    Rational paper_bound;
    std::vector<std::string> infeasible_labels;
};

struct SerranoReport {
    Verdict verdict = Verdict::unknown;
    std::optional<ThresholdResult> threshold;
    std::vector<ConditionLine> conditions;
    Soundness soundness = Soundness::exact;
    std::string route = "direct";
    std::string strict_nef_route; // how strict nefness of D was established
    std::vector<std::string> annotations;
    std::vector<CertificateUse> certificates_used;
};

/// Checks ampleness of K_{P(E)} + tD for every t >= n+r+1 via the
/// family criterion, and computes the exact threshold t0.
SerranoReport verify_conjecture(const SerranoProblem& problem);

/// The threshold piece alone: t0 = max root of the positive-slope
/// conditions; infeasible systems are flagged, not thrown.
ThresholdResult threshold(const SerranoProblem& problem);

/// Validates the hypotheses of a named theorem and returns the
/// conclusion it licenses. theorem_id in {"3.1", "3.2", "3.3(1)",
/// "3.3(2)", "4.10", "toric", "split_pn", "tangent_pn"}. When the direct
/// criterion also applies both results are attached and must agree.
SerranoReport check_theorem_hypotheses(const SerranoProblem& problem, const std::string& theorem_id);

struct WindowEntry {
    std::string label;
    Rational value; // det(V).C - r mu_min(V|_C)
    Rational upper; // -K_X . C
    bool pass = false;
};

struct AntiCanonicalReport {
    Tri verdict = Tri::unknown;
    Soundness soundness = Soundness::exact;
    std::vector<WindowEntry> windows;
    std::vector<std::string> annotations;
};

/// -K_{P(V)} nef iff 0 <= det(V).C - r mu_min(V|_C) <= -K_X . C on every
/// family (single window 0 <= deg - r mu_min <= 2-2g on a curve base).
AntiCanonicalReport anti_canonical_nef(const BaseVariety& base, const BundleDescriptor& bundle);

struct EquivalenceReport {
    bool pre_ok = false;   // -K_X nef established
    Tri e_ample = Tri::unknown;
    Tri det_ample = Tri::unknown;
    Tri det_strictly_nef = Tri::unknown;
    Tri joined = Tri::unknown;
    std::vector<std::string> notes;
    std::vector<CertificateUse> certificates_used;
};

/// Semistable with c2(End)=0 over a base with -K_X nef: E ample, det(E)
/// ample and det(E) strictly nef are equivalent. Certified values are
/// joined; a contradiction raises an inconsistency error.
EquivalenceReport equivalence_check_thm_4_11(const BaseVariety& base, const BundleDescriptor& bundle,
                                             const CertificateStore* certs = nullptr);

} // namespace pepos
