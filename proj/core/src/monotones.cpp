#include "eprcert/monotones.hpp"

#include "eprcert/error.hpp"

#include <algorithm>
#include <cmath>

namespace eprcert {

namespace {

void require_finite(const SteeringAssessment& a) {
    if (!std::isfinite(a.s_ab_upper_bits) || !std::isfinite(a.lhs_bits) ||
        !std::isfinite(a.bound_bits))
        throw NumericalError("steering assessment contains non-finite values");
}

void append_unique(std::vector<std::string>& ids, const std::string& id) {
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
}

} // namespace

EntanglementCertificate certify(const SteeringAssessment& ab,
                                const std::optional<SteeringAssessment>& ba,
                                std::string dof_label, std::string estimator_note) {
    require_finite(ab);
    if (ab.direction != Direction::a_given_b)
        throw DirectionMismatch("first assessment must condition A on B");
    if (ba) {
        require_finite(*ba);
        if (ba->direction != Direction::b_given_a)
            throw DirectionMismatch("second assessment must condition B on A");
        if (ba->relation_id != ab.relation_id)
            throw DirectionMismatch("directions use different relations: '" + ab.relation_id +
                                    "' vs '" + ba->relation_id + "'");
    }

    EntanglementCertificate cert;
    cert.s_ab_upper = ab.s_ab_upper_bits;
    cert.ef_ere_esq_lower = std::max(0.0, -ab.s_ab_upper_bits);
    if (ba) {
        cert.s_ba_upper = ba->s_ab_upper_bits;
        cert.ef_ere_esq_lower = std::max(cert.ef_ere_esq_lower, -ba->s_ab_upper_bits);
        cert.ed_raw_mean = 0.5 * (-ab.s_ab_upper_bits - ba->s_ab_upper_bits);
        cert.ed_lower = std::max(0.0, cert.ed_raw_mean);
        cert.ed_certified = true;
    }
    cert.vacuous = ab.vacuous && (!ba || ba->vacuous);
    cert.relation_ids.push_back(ab.relation_id);
    cert.per_dof.push_back(
        {std::move(dof_label), cert.ef_ere_esq_lower, cert.ed_lower, cert.ed_certified});
    cert.estimator_note = std::move(estimator_note);
    return cert;
}

EntanglementCertificate combine_dofs(const std::vector<EntanglementCertificate>& parts) {
    if (parts.empty()) throw EmptyInput("no certificates to combine");
    if (parts.size() == 1) return parts.front();

    EntanglementCertificate total;
    total.vacuous = true;
    double s_ab_sum = 0.0;
    double s_ba_sum = 0.0;
    bool all_ba = true;
    for (const EntanglementCertificate& part : parts) {
        total.ef_ere_esq_lower += part.ef_ere_esq_lower;
        if (part.ed_certified) {
            total.ed_lower += part.ed_lower;
            total.ed_raw_mean += part.ed_raw_mean;
            total.ed_certified = true;
        }
        total.vacuous = total.vacuous && part.vacuous;
        s_ab_sum += part.s_ab_upper;
        if (part.s_ba_upper)
            s_ba_sum += *part.s_ba_upper;
        else
            all_ba = false;
        total.per_dof.insert(total.per_dof.end(), part.per_dof.begin(), part.per_dof.end());
        for (const std::string& id : part.relation_ids) append_unique(total.relation_ids, id);
        if (total.estimator_note.empty())
            total.estimator_note = part.estimator_note;
        else if (part.estimator_note != total.estimator_note &&
                 total.estimator_note.find(part.estimator_note) == std::string::npos)
            total.estimator_note += "; " + part.estimator_note;
    }
    // Conditional entropies are subadditive over independent degrees of
    // freedom, so summed upper bounds stay valid upper bounds.
    total.s_ab_upper = s_ab_sum;
    if (all_ba) total.s_ba_upper = s_ba_sum;
    return total;
}

} // namespace eprcert
