#pragma once

#include "eprcert/witness.hpp"

#include <optional>
#include <string>
#include <vector>

namespace eprcert {

struct DofContribution {
    std::string label;
    double ef_ebits = 0.0;
    double ed_ebits = 0.0;
    bool ed_certified = false;
};

// Certified lower bounds, in ebits, on the entanglement of formation,
// relative entropy of entanglement and squashed entanglement (they share
// one bound) and on the distillable entanglement. All bounds are clamped
// at zero: a certificate never claims negative entanglement.
struct EntanglementCertificate {
    double ef_ere_esq_lower = 0.0;
    double ed_lower = 0.0;
    bool ed_certified = false;  // both directions were assessed
    double ed_raw_mean = 0.0;   // unclamped (-s_ab - s_ba)/2; diagnostic only
    double s_ab_upper = 0.0;
    std::optional<double> s_ba_upper;
    bool vacuous = false;       // every underlying relation was vacuous
    std::vector<DofContribution> per_dof;
    std::vector<std::string> relation_ids;
    std::string estimator_note;
};

// Turns one degree of freedom's steering assessments into monotone bounds:
//   E_F/E_RE/E_SQ >= max(0, -s_ab_upper, -s_ba_upper)
//   E_D           >= max(0, (-s_ab_upper - s_ba_upper)/2)   (both directions)
// The distillable bound needs both directions; with one it is reported as
// not certified. Throws DirectionMismatch when the two assessments do not
// mirror each other (same direction twice, or different relations).
EntanglementCertificate certify(const SteeringAssessment& ab,
                                const std::optional<SteeringAssessment>& ba = std::nullopt,
                                std::string dof_label = "dof0",
                                std::string estimator_note = "plug-in");

// Additive combination across independent degrees of freedom: per-DOF
// lower bounds (each already clamped) sum. A DOF certifying zero leaves the
// total unchanged. Throws EmptyInput on an empty list.
EntanglementCertificate combine_dofs(const std::vector<EntanglementCertificate>& parts);

} // namespace eprcert
