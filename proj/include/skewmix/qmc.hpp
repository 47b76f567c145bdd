#pragma once

#include <cstdint>
#include <vector>

namespace skewmix {

/// Version tag of the frozen quasi-random sequence. Bump when the point
/// construction changes; results are reproducible within a version.
inline constexpr int kQmcSequenceVersion = 1;

/// Richtmyer (Kronecker) sequence with deterministic random shifts.
///
/// Point k of shift s in dimension j is frac(k * sqrt(prime_j) + shift_s[j]).
/// The shifts come from a fixed seed, so every run of the library sees the
/// same sequence; the spread across shifts still yields an error estimate.
class QmcLattice {
public:
    QmcLattice(int dim, int n_shifts);

    int dim() const { return dim_; }
    int n_shifts() const { return n_shifts_; }

    /// Writes point `index` of shift `shift` into out[0..dim).
    void point(int shift, std::uint64_t index, double* out) const;

private:
    int dim_;
    int n_shifts_;
    std::vector<double> roots_;   // frac(sqrt(prime_j))
    std::vector<double> shifts_;  // n_shifts x dim, row-major
};

} // namespace skewmix
