#include "pcnet/scheme.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>

namespace pcnet {

std::variant<DerivedParams, CompatError> check_compat(const MapdaArray& base,
                                                      const NetworkConfig& net) {
    CompatError err;
    auto verified = verify_mapda(base);
    if (std::holds_alternative<std::vector<Violation>>(verified)) {
        err.reasons.push_back("base array is not a valid MAPDA");
        return err;
    }
    const MapdaParams params = std::get<MapdaParams>(verified);

    if (net.K < 1 || net.L < 1 || net.L > net.K || net.N < 1)
        err.reasons.push_back("network needs 1 <= L <= K and N >= 1");
    if (params.K != net.K)
        err.reasons.push_back("base has " + std::to_string(params.K) + " columns, network has K=" +
                              std::to_string(net.K) + " users");

    Rat t_rat = net.mt * net.L;
    Rat z_rat = net.mu * net.K;
    if (!is_integer(t_rat) || t_rat < 1 || t_rat > net.L)
        err.reasons.push_back("t = L*M_T/N = " + rat_to_string(t_rat) +
                              " is not an integer in [1..L]");
    if (!is_integer(z_rat) || z_rat < 0 || z_rat > net.K)
        err.reasons.push_back("z = K*M_U/N = " + rat_to_string(z_rat) +
                              " is not an integer in [0..K]");
    if (Rat(params.Z, params.F) != net.mu)
        err.reasons.push_back("memory ratio mismatch: Z1/F1 = " +
                              rat_to_string(Rat(params.Z, params.F)) + " but M_U/N = " +
                              rat_to_string(net.mu));
    if (!err.reasons.empty()) return err;

    DerivedParams d;
    d.t = rat_to_long(t_rat);
    d.z = rat_to_long(z_rat);
    d.r = d.t * net.ceil_K_over_L();
    if (params.r != d.r)
        err.reasons.push_back("antenna/topology mismatch: base r = " + std::to_string(params.r) +
                              " but t*ceil(K/L) = " + std::to_string(d.r));
    if (!err.reasons.empty()) return err;
    d.F1 = params.F;
    d.Z1 = params.Z;
    d.S1 = params.S;
    return d;
}

DerivedParams derive_params(const NetworkConfig& net) {
    Rat t_rat = net.mt * net.L;
    Rat z_rat = net.mu * net.K;
    if (!is_integer(t_rat) || t_rat < 1 || t_rat > net.L)
        throw std::invalid_argument("t = L*M_T/N = " + rat_to_string(t_rat) +
                                    " is not an integer in [1..L]");
    if (!is_integer(z_rat) || z_rat < 0 || z_rat > net.K)
        throw std::invalid_argument("z = K*M_U/N = " + rat_to_string(z_rat) +
                                    " is not an integer in [0..K]");
    DerivedParams d;
    d.t = rat_to_long(t_rat);
    d.z = rat_to_long(z_rat);
    d.r = d.t * net.ceil_K_over_L();
    return d;
}

UserArray build_user_array(const MapdaArray& base, long L) {
    auto verified = verify_mapda(base);
    if (std::holds_alternative<std::vector<Violation>>(verified))
        throw std::invalid_argument("build_user_array: base array is not a valid MAPDA");
    const MapdaParams params = std::get<MapdaParams>(verified);

    UserArray P;
    P.layers = L;
    P.F1 = params.F;
    P.S1 = params.S;
    P.grid.rows = L * params.F;
    P.grid.cols = params.K;
    P.grid.antennas = params.r;
    P.grid.cells.reserve(P.grid.rows * P.grid.cols);
    for (long l = 0; l < L; ++l)
        for (const Cell& c : base.cells)
            P.grid.cells.push_back(c.is_star() ? c : Cell::integer(c.value + l * params.S));
    return P;
}

bool TransmitterArray::layer_cached_by(long l, long j) const {
    long res = mod1(j, layers);
    for (long mu = 0; mu < t; ++mu)
        if (res == mod1(l + mu, layers)) return true;
    return false;
}

TransmitterArray build_transmitter_array(long L, long t, long F1, long K) {
    if (t < 1 || t > L) throw std::invalid_argument("build_transmitter_array: need 1 <= t <= L");
    if (F1 < 1 || K < 1) throw std::invalid_argument("build_transmitter_array: need F1, K >= 1");
    TransmitterArray T;
    T.layers = L;
    T.t = t;
    T.F1 = F1;
    T.rows = L * F1;
    T.cols = K + L - 1;
    T.star.assign(T.rows * T.cols, false);
    for (long l = 1; l <= L; ++l)
        for (long f = 0; f < F1; ++f)
            for (long j = 1; j <= T.cols; ++j)
                T.star[((l - 1) * F1 + f) * T.cols + (j - 1)] = T.layer_cached_by(l, j);
    return T;
}

PlacementMap derive_placement(const UserArray& P, const TransmitterArray& T,
                              const NetworkConfig& net) {
    PlacementMap map;
    map.transmitter_packets.resize(T.cols);
    for (long j = 0; j < T.cols; ++j)
        for (long row = 0; row < T.rows; ++row)
            if (T.at(row, j)) map.transmitter_packets[j].push_back(row);
    map.user_packets.resize(P.grid.cols);
    for (long k = 0; k < P.grid.cols; ++k)
        for (long row = 0; row < P.grid.rows; ++row)
            if (P.grid.at(row, k).is_star()) map.user_packets[k].push_back(row);

    // Cache budgets are exact by construction; a mismatch is an internal bug.
    const long t = T.t, F1 = T.F1;
    for (long j = 0; j < T.cols; ++j)
        if (static_cast<long>(map.transmitter_packets[j].size()) != t * F1)
            throw std::logic_error("derive_placement: transmitter cache budget violated");
    Rat z1 = net.mu * F1;
    for (long k = 0; k < P.grid.cols; ++k)
        if (Rat(static_cast<long>(map.user_packets[k].size()), 1) != z1 * P.layers)
            throw std::logic_error("derive_placement: user cache budget violated");
    return map;
}

SchemePair build_scheme(const MapdaArray& base, const NetworkConfig& net) {
    auto compat = check_compat(base, net);
    if (std::holds_alternative<CompatError>(compat)) {
        std::string msg = "incompatible base/network:";
        for (const auto& reason : std::get<CompatError>(compat).reasons) msg += "\n  " + reason;
        throw std::invalid_argument(msg);
    }
    SchemePair scheme;
    scheme.net = net;
    scheme.derived = std::get<DerivedParams>(compat);
    scheme.base = base;
    scheme.P = build_user_array(base, net.L);
    scheme.T = build_transmitter_array(net.L, scheme.derived.t, scheme.derived.F1, net.K);
    scheme.placement = derive_placement(scheme.P, scheme.T, net);
    return scheme;
}

std::string scheme_to_json(const SchemePair& scheme) {
    nlohmann::json j;
    j["network"] = {{"K", scheme.net.K},
                    {"L", scheme.net.L},
                    {"N", scheme.net.N},
                    {"mt", rat_to_string(scheme.net.mt)},
                    {"mu", rat_to_string(scheme.net.mu)}};
    j["derived"] = {{"t", scheme.derived.t},   {"z", scheme.derived.z},
                    {"r", scheme.derived.r},   {"F1", scheme.derived.F1},
                    {"Z1", scheme.derived.Z1}, {"S1", scheme.derived.S1}};
    j["user_array"] = write_mapda(scheme.P.grid);
    std::vector<std::string> t_rows;
    for (long row = 0; row < scheme.T.rows; ++row) {
        std::string line;
        for (long col = 0; col < scheme.T.cols; ++col) {
            if (col) line += ' ';
            line += scheme.T.at(row, col) ? '*' : '.';
        }
        t_rows.push_back(line);
    }
    j["transmitter_array"] = t_rows;
    j["placement"] = {{"transmitters", scheme.placement.transmitter_packets},
                      {"users", scheme.placement.user_packets}};
    return j.dump(2);
}

}  // namespace pcnet
