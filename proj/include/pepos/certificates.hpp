#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pepos/rational.hpp"

namespace pepos {

/// A user-supplied positivity assertion with provenance, e.g.
/// {"subject": "bundle.is_ample", "value": true, "provenance": "..."}.
struct Certificate {
    std::string subject;
    bool value = false;
    std::string provenance;
};

struct CertificateUse {
    std::string subject;
    bool value = false;
    std::string provenance;
};

/// Certificates are mandatory-explicit: every consumed assertion is
/// recorded. When disabled (--no-certificates) lookups return nothing and
/// certified verdicts degrade to unknown.
struct CertificateStore {
    std::vector<Certificate> entries;
    bool enabled = true;

    std::optional<bool> lookup(const std::string& subject,
                               std::vector<CertificateUse>* used = nullptr) const {
        if (!enabled)
            return std::nullopt;
        for (const auto& cert : entries) {
            if (cert.subject == subject) {
                if (used)
                    used->push_back(CertificateUse{cert.subject, cert.value, cert.provenance});
                return cert.value;
            }
        }
        return std::nullopt;
    }
};

// Well-known certificate subjects.
namespace cert_subject {
inline constexpr const char* bundle_nef = "bundle.is_nef";
inline constexpr const char* bundle_ample = "bundle.is_ample";
inline constexpr const char* bundle_strictly_nef = "bundle.is_strictly_nef";
inline constexpr const char* det_ample = "det.is_ample";
inline constexpr const char* det_strictly_nef = "det.is_strictly_nef";
inline constexpr const char* n_nef = "N.is_nef";
inline constexpr const char* n_strictly_nef = "N.is_strictly_nef";
inline constexpr const char* k_plus_det_strictly_nef = "K_plus_det.is_strictly_nef";
inline constexpr const char* k_plus_det_trivial = "K_plus_det.is_numerically_trivial";
inline constexpr const char* base_k_nef = "base.K_nef";
inline constexpr const char* base_minus_k_nef = "base.minus_K_nef";
inline constexpr const char* base_k_trivial = "base.K_trivial";
inline constexpr const char* base_serrano_known = "base.serrano_known";
} // namespace cert_subject

} // namespace pepos
