#pragma once

#include "mre/distribution.hpp"
#include "mre/extended_real.hpp"

namespace mre {

/// Information gained by moving the plausibility of one proposition from
/// prior to posterior: log(posterior / prior), natural log (unit constant
/// fixed to 1, so values are in nats). Both arguments live in (0, 1].
/// Throws NonpositivePlausibilityError for arguments <= 0.
double information_gain(double prior, double posterior);

/// Relative entropy H(q;p) = sum_i q_i log(q_i / p_i), the q-average
/// information gain. Conventions: 0 * log(0/p) = 0 even when p = 0; any term
/// with q_i > 0 and p_i = 0 makes the whole sum +infinity. Nonnegative, and
/// zero exactly when q equals p on the union of their supports.
/// Throws SpaceMismatchError.
ExtendedReal relative_entropy(const Distribution& q, const Distribution& p);

/// Shannon entropy H(p) = -sum_i p_i log p_i, with 0 log 0 = 0.
/// Lies in [0, log n]; equals log n - relative_entropy(p, uniform).
double shannon_entropy(const Distribution& p);

} // namespace mre
