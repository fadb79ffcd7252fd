#include "dll/core/records.hpp"

#include <stdexcept>
#include <string>

namespace dll {

void check_invariants(const SurvivalCurves& c) {
    const std::size_t n = c.times.size();
    auto require = [](bool ok, const char* what) {
        if (!ok) throw std::logic_error(std::string("SurvivalCurves invariant violated: ") + what);
    };
    require(c.n_uncond.size() == n && c.k_uncond.size() == n && c.n_cond.size() == n &&
                c.k_cond.size() == n && c.n_retained.size() == n,
            "column lengths differ");
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) require(c.times[i] > c.times[i - 1], "times not increasing");
        require(c.n_uncond[i] >= 0 && c.k_uncond[i] >= 0 && c.n_cond[i] >= 0 && c.k_cond[i] >= 0,
                "negative count");
        require(c.k_uncond[i] <= c.n_uncond[i], "k_uncond > n_uncond");
        require(c.k_cond[i] <= c.n_cond[i], "k_cond > n_cond");
        require(c.n_cond[i] == c.n_retained[i], "n_cond != n_retained");
        require(c.n_cond[i] <= c.n_uncond[i], "n_cond > n_uncond");
        if (i > 0) require(c.n_retained[i] <= c.n_retained[i - 1], "n_retained increased");
    }
}

}  // namespace dll
