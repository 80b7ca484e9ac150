#include "rsim/constellation.hpp"

#include <cmath>

namespace rsim {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

PskAlphabet psk_alphabet(int order) {
    if (order != 2 && order != 4 && order != 8)
        throw ConfigError("PSK order must be one of {2,4,8}");
    PskAlphabet a;
    a.order = order;
    a.symbols.resize(static_cast<size_t>(order));
    double offset = (order == 4) ? kPi / 4.0 : 0.0;
    for (int j = 0; j < order; ++j) {
        double arg = 2.0 * kPi * j / order + offset;
        a.symbols[static_cast<size_t>(j)] = cplx(std::cos(arg), std::sin(arg));
    }
    // BPSK exactly {+1,-1}; kill the sin() rounding dust.
    if (order == 2) {
        a.symbols[0] = cplx(1.0, 0.0);
        a.symbols[1] = cplx(-1.0, 0.0);
    }
    return a;
}

long stream_count(int order, int streams) {
    long n = 1;
    for (int s = 0; s < streams; ++s) {
        if (n > (1L << 40) / order) throw ResourceError("stream count overflow");
        n *= order;
    }
    return n;
}

StreamVectorSet stream_vectors(int order, int streams, long cap) {
    PskAlphabet a = psk_alphabet(order);
    long n = stream_count(order, streams);
    if (n > cap)
        throw ResourceError(
            "M^S = " + std::to_string(n) + " exceeds the enumeration cap " +
            std::to_string(cap) + "; use the MC outer-index subsampling mode");
    StreamVectorSet set;
    set.order = order;
    set.streams = streams;
    set.count = n;
    set.vectors.resize(static_cast<size_t>(n));
    for (long idx = 0; idx < n; ++idx)
        set.vectors[static_cast<size_t>(idx)] = stream_vector_at(a, streams, idx);
    return set;
}

std::vector<cplx> stream_vector_at(const PskAlphabet& alphabet, int streams, long idx) {
    std::vector<cplx> v(static_cast<size_t>(streams));
    long rem = idx;
    for (int s = streams - 1; s >= 0; --s) {
        v[static_cast<size_t>(s)] = alphabet.symbols[static_cast<size_t>(rem % alphabet.order)];
        rem /= alphabet.order;
    }
    return v;
}

} // namespace rsim
