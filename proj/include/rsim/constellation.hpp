#ifndef RSIM_CONSTELLATION_HPP
#define RSIM_CONSTELLATION_HPP

#include <vector>

#include "rsim/common.hpp"

namespace rsim {

/// Default cap on enumerated symbol tuples (4^6). Larger stream spaces must
/// go through the MC outer-index subsampling path.
constexpr long kEnumerationCap = 4096;

struct PskAlphabet {
    int order = 0;                // M
    std::vector<cplx> symbols;    // unit modulus, arg = 2*pi*j/M + offset
};

/// M in {2,4,8}. BPSK = {+1,-1}; QPSK rotated by pi/4 (rates are invariant to
/// the rotation, the offset just matches common practice).
PskAlphabet psk_alphabet(int order);

/// Complete lexicographic enumeration of all M^S symbol tuples; the first
/// stream is the most significant digit. Order is platform independent.
struct StreamVectorSet {
    int order = 0;   // M
    int streams = 0; // S
    long count = 0;  // M^S
    std::vector<std::vector<cplx>> vectors;

    const std::vector<cplx>& operator[](long idx) const {
        return vectors[static_cast<size_t>(idx)];
    }
};

StreamVectorSet stream_vectors(int order, int streams, long cap = kEnumerationCap);

/// Number of tuples M^S without materializing them (subsampling path).
long stream_count(int order, int streams);

/// Decodes tuple #idx of the lexicographic enumeration without materializing
/// the full set.
std::vector<cplx> stream_vector_at(const PskAlphabet& alphabet, int streams, long idx);

/// Indexed family of all ordered pair differences x_{m,i} = x_m - x_i.
/// Pairs are exposed through an accessor rather than materialized: the family
/// has (M^S)^2 members.
class DifferenceSet {
  public:
    explicit DifferenceSet(const StreamVectorSet& vectors) : vectors_(&vectors) {}

    long pair_count() const { return vectors_->count * vectors_->count; }
    long vector_count() const { return vectors_->count; }

    std::vector<cplx> difference(long m, long i) const {
        const auto& xm = (*vectors_)[m];
        const auto& xi = (*vectors_)[i];
        std::vector<cplx> d(xm.size());
        for (size_t s = 0; s < xm.size(); ++s) d[s] = xm[s] - xi[s];
        return d;
    }

  private:
    const StreamVectorSet* vectors_;
};

inline DifferenceSet difference_set(const StreamVectorSet& vectors) {
    return DifferenceSet(vectors);
}

} // namespace rsim

#endif
