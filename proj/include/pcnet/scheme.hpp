#pragma once

#include <string>
#include <vector>

#include "pcnet/mapda.hpp"
#include "pcnet/numeric.hpp"

namespace pcnet {

/// (K, L, M_T, M_U, N) network with cache sizes as exact rationals (in files).
struct NetworkConfig {
    long K = 0;  // users
    long L = 0;  // user connectivity, 1 <= L <= K
    long N = 0;  // files
    Rat mt;      // M_T / N
    Rat mu;      // M_U / N

    long transmitters() const { return K + L - 1; }
    long ceil_K_over_L() const { return (K + L - 1) / L; }
};

/// Parameters derived from a base MAPDA and a network; the Theorem-1
/// compatibility contract.
struct DerivedParams {
    long t = 0;   // L * M_T / N
    long z = 0;   // K * M_U / N
    long r = 0;   // t * ceil(K/L)
    long F1 = 0, Z1 = 0, S1 = 0;
};

struct CompatError {
    std::vector<std::string> reasons;
};

std::variant<DerivedParams, CompatError> check_compat(const MapdaArray& base,
                                                      const NetworkConfig& net);

/// (t, z, r) from the network alone (F1/Z1/S1 stay 0); throws
/// std::invalid_argument when t or z is not a valid integer.
DerivedParams derive_params(const NetworkConfig& net);

/// P: the base array replicated vertically L times with integers shifted by
/// (l-1)*S1 per layer. Rows are addressed as (layer l in [1..L], f in [1..F1]).
struct UserArray {
    MapdaArray grid;  // (L*F1) x K
    long layers = 0;
    long F1 = 0, S1 = 0;

    long row_of(long l, long f) const { return (l - 1) * F1 + (f - 1); }  // 1-based l, f
};

UserArray build_user_array(const MapdaArray& base, long L);

/// T: (L*F1) x (K+L-1) star/null grid; row (l, f) has a star at transmitter j
/// iff <j>_L lies in {<l+mu>_L : mu in [0..t-1]}. f-independent by construction.
struct TransmitterArray {
    long rows = 0, cols = 0;
    long layers = 0, t = 0, F1 = 0;
    std::vector<bool> star;  // row-major

    bool at(long row, long j) const { return star[row * cols + j]; }
    bool layer_cached_by(long l, long j) const;  // 1-based l, j
};

TransmitterArray build_transmitter_array(long L, long t, long F1, long K);

/// Packet indices are (l, f) pairs flattened to row indices of P/T; the same
/// index set applies to every file.
struct PlacementMap {
    std::vector<std::vector<long>> transmitter_packets;  // per transmitter, 0-based row ids
    std::vector<std::vector<long>> user_packets;         // per user, 0-based row ids
};

PlacementMap derive_placement(const UserArray& P, const TransmitterArray& T,
                              const NetworkConfig& net);

struct SchemePair {
    NetworkConfig net;
    DerivedParams derived;
    MapdaArray base;
    UserArray P;
    TransmitterArray T;
    PlacementMap placement;
};

/// Runs the full Theorem-1 construction. Throws std::invalid_argument with
/// the failed compatibility conditions when base and net do not match.
SchemePair build_scheme(const MapdaArray& base, const NetworkConfig& net);

/// Structured JSON document: network parameters, P in MAPDA text format,
/// T as '*'/'.' rows, placement maps as index lists.
std::string scheme_to_json(const SchemePair& scheme);

}  // namespace pcnet
