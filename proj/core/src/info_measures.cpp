#include "mre/info_measures.hpp"

#include <cmath>
#include <limits>

#include "mre/errors.hpp"

namespace mre {

double information_gain(double prior, double posterior) {
    if (!(prior > 0.0) || !(posterior > 0.0)) {
        throw NonpositivePlausibilityError("plausibilities must be strictly positive");
    }
    return std::log(posterior / prior);
}

ExtendedReal relative_entropy(const Distribution& q, const Distribution& p) {
    if (q.space() != p.space()) {
        throw SpaceMismatchError("distributions live on different outcome spaces");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        double qi = q.weight(i);
        if (qi == 0.0) continue; // 0 log(0/p) = 0, also for p = 0
        double pi = p.weight(i);
        if (pi == 0.0) {
            return ExtendedReal::infinity();
        }
        sum += qi * std::log(qi / pi);
    }
    return ExtendedReal(sum);
}

double shannon_entropy(const Distribution& p) {
    double sum = 0.0;
    for (double w : p.weights()) {
        if (w > 0.0) sum -= w * std::log(w);
    }
    return sum;
}

} // namespace mre
