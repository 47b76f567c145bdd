#include "skewmix/qmc.hpp"

#include <cmath>
#include <random>

#include "skewmix/errors.hpp"

namespace skewmix {

namespace {

std::vector<int> first_primes(int n) {
    std::vector<int> primes;
    primes.reserve(n);
    for (int c = 2; static_cast<int>(primes.size()) < n; ++c) {
        bool is_prime = true;
        for (int p : primes) {
            if (p * p > c) break;
            if (c % p == 0) { is_prime = false; break; }
        }
        if (is_prime) primes.push_back(c);
    }
    return primes;
}

} // namespace

QmcLattice::QmcLattice(int dim, int n_shifts) : dim_(dim), n_shifts_(n_shifts) {
    if (dim < 1 || n_shifts < 1) throw contract_error("QmcLattice: dim and n_shifts must be >= 1");
    const auto primes = first_primes(dim);
    roots_.resize(dim);
    for (int j = 0; j < dim; ++j) {
        double r = std::sqrt(static_cast<double>(primes[j]));
        roots_[j] = r - std::floor(r);
    }
    // fixed seed -> frozen sequence (see kQmcSequenceVersion)
    std::mt19937_64 gen(0x534b45574d495831ull + static_cast<std::uint64_t>(kQmcSequenceVersion));
    shifts_.resize(static_cast<std::size_t>(n_shifts) * dim);
    for (double& s : shifts_) {
        s = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    }
}

void QmcLattice::point(int shift, std::uint64_t index, double* out) const {
    const double* sh = &shifts_[static_cast<std::size_t>(shift) * dim_];
    const double k = static_cast<double>(index);
    for (int j = 0; j < dim_; ++j) {
        const double v = k * roots_[j] + sh[j];
        out[j] = v - std::floor(v);
    }
}

} // namespace skewmix
