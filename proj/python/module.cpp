#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pcnet/analytics.hpp"
#include "pcnet/delivery.hpp"
#include "pcnet/mapda.hpp"
#include "pcnet/scheme.hpp"

namespace py = pybind11;
using namespace pcnet;

namespace {

Rat parse_rat(const std::string& text) {
    auto v = parse_rational(text);
    if (!v) throw std::invalid_argument("not a rational: " + text);
    return *v;
}

NetworkConfig make_net(long K, long L, long N, const std::string& mt, const std::string& mu) {
    NetworkConfig net;
    net.K = K;
    net.L = L;
    net.N = N;
    net.mt = parse_rat(mt);
    net.mu = parse_rat(mu);
    return net;
}

py::dict verify_text(const std::string& text) {
    MapdaArray a = read_mapda_string(text);
    auto res = verify_mapda(a);
    py::dict out;
    if (std::holds_alternative<MapdaParams>(res)) {
        const MapdaParams& p = std::get<MapdaParams>(res);
        out["valid"] = true;
        out["r"] = p.r;
        out["K"] = p.K;
        out["F"] = p.F;
        out["Z"] = p.Z;
        out["S"] = p.S;
        if (p.regular_g) out["g"] = *p.regular_g;
    } else {
        out["valid"] = false;
        py::list issues;
        for (const Violation& v : std::get<std::vector<Violation>>(res)) {
            py::dict d;
            d["condition"] = v.condition;
            d["detail"] = v.detail;
            d["row"] = v.row;
            d["col"] = v.col;
            issues.append(d);
        }
        out["violations"] = issues;
    }
    return out;
}

std::string generate_text(const std::string& base, long K, long z, long r) {
    if (base == "cyclic") return write_mapda(gen_cyclic_mapda(K, z));
    if (base == "mn") return write_mapda(gen_mn_pda(K, z));
    if (base == "grouping") return write_mapda(gen_grouping_mapda(K, z, r));
    throw std::invalid_argument("unknown base: " + base);
}

std::string build_json(const std::string& base_text, long K, long L, long N,
                       const std::string& mt, const std::string& mu) {
    return scheme_to_json(build_scheme(read_mapda_string(base_text), make_net(K, L, N, mt, mu)));
}

std::string simulate_json(const std::string& base_text, long K, long L, long N,
                          const std::string& mt, const std::string& mu,
                          const std::vector<long>& demand, uint64_t seed,
                          const std::string& scalar) {
    SchemePair s = build_scheme(read_mapda_string(base_text), make_net(K, L, N, mt, mu));
    ScalarMode mode = scalar == "complex" ? ScalarMode::Complex : ScalarMode::Rational;
    std::vector<long> d = demand.empty() ? default_demand(s.net) : demand;
    return report_to_json(simulate(s, d, seed, mode), s);
}

std::string compare_json(long K, long L, const std::string& mt, const std::string& mu) {
    return record_to_json(compare_point(K, L, parse_rat(mt), parse_rat(mu)));
}

std::string sweep_csv(long K, long L, const std::vector<std::string>& mts,
                      const std::vector<std::string>& mus) {
    std::vector<Rat> vmt, vmu;
    for (const auto& s : mts) vmt.push_back(parse_rat(s));
    for (const auto& s : mus) vmu.push_back(parse_rat(s));
    return records_to_csv(sweep(K, L, vmt, vmu));
}

py::dict catalog_dict(int row, long K, long z, long r, std::optional<long> m) {
    CatalogResult c = catalog_params(row, K, z, r, m);
    py::dict out;
    out["F"] = c.F.str();
    out["Z"] = c.Z.str();
    out["S"] = c.S.str();
    return out;
}

}  // namespace

PYBIND11_MODULE(_pcnet, m) {
    m.doc() = "multi-antenna placement delivery arrays and banded-network coded caching";
    m.def("verify", &verify_text, py::arg("text"),
          "Check conditions C1-C4 of an array in text format.");
    m.def("generate", &generate_text, py::arg("base"), py::arg("K"), py::arg("z"),
          py::arg("r") = 1, "Render a cyclic/mn/grouping array as text.");
    m.def("build_scheme", &build_json, py::arg("base_text"), py::arg("K"), py::arg("L"),
          py::arg("N"), py::arg("mt"), py::arg("mu"),
          "Run the lifting construction; returns the scheme as JSON.");
    m.def("simulate", &simulate_json, py::arg("base_text"), py::arg("K"), py::arg("L"),
          py::arg("N"), py::arg("mt"), py::arg("mu"),
          py::arg("demand") = std::vector<long>{}, py::arg("seed") = 1,
          py::arg("scalar") = "rational",
          "One-shot delivery simulation; returns the report as JSON.");
    m.def("compare", &compare_json, py::arg("K"), py::arg("L"), py::arg("mt"), py::arg("mu"),
          "NDT and subpacketization comparison at one point, as JSON.");
    m.def("sweep", &sweep_csv, py::arg("K"), py::arg("L"), py::arg("mts"), py::arg("mus"),
          "Cartesian comparison sweep, as CSV text.");
    m.def("catalog", &catalog_dict, py::arg("row"), py::arg("K"), py::arg("z"), py::arg("r"),
          py::arg("m") = std::nullopt, "Closed-form (F, Z, S) for a catalog row.");
    m.def("ndt", [](long K, long L, const std::string& mt, const std::string& mu) {
        return rat_to_string(ndt_new(K, L, parse_rat(mt), parse_rat(mu)));
    });
    m.def("ndt_baseline", [](long K, long L, const std::string& mt, const std::string& mu) {
        return rat_to_string(ndt_xtz(K, L, parse_rat(mt), parse_rat(mu)));
    });
}
