// pcnet: construct, verify, and simulate coded-caching schemes for
// partially connected linear networks, and compare them against the
// interference-alignment baseline.
//
// Exit codes: 0 success, 1 verification/simulation failure, 2 usage error.

#include <CLI11.hpp>

#include "pcnet/analytics.hpp"
#include "pcnet/delivery.hpp"
#include "pcnet/mapda.hpp"
#include "pcnet/scheme.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace pcnet;

namespace {

Rat parse_rat_flag(const std::string& text, const std::string& flag) {
    auto r = parse_rational(text);
    if (!r) throw CLI::ValidationError(flag, "expected a rational like 2/3 or 0.25");
    return *r;
}

uint64_t pick_seed(std::optional<uint64_t> flag_seed) {
    if (flag_seed) return *flag_seed;
    if (const char* env = std::getenv("PCNET_SEED")) return std::strtoull(env, nullptr, 10);
    return 1;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + out_path);
    os << text;
}

MapdaArray load_base(const std::string& base, long K, long z, long r) {
    if (base == "cyclic") return gen_cyclic_mapda(K, z);
    if (base == "mn") return gen_mn_pda(K, z);
    if (base == "grouping") return gen_grouping_mapda(K, z, r);
    if (base.rfind("file:", 0) == 0) return read_mapda_file(base.substr(5));
    throw CLI::ValidationError("--base", "expected cyclic, grouping, mn, or file:<path>");
}

std::string params_line(const MapdaParams& p) {
    std::ostringstream os;
    os << "valid ";
    if (p.regular_g) os << *p.regular_g << "-";
    os << "(" << p.r << "," << p.K << "," << p.F << "," << p.Z << "," << p.S << ")";
    return os.str();
}

std::string violations_text(const std::vector<Violation>& vs) {
    std::ostringstream os;
    for (const Violation& v : vs) {
        os << v.condition << ": " << v.detail;
        if (v.row >= 0) os << " (row " << v.row + 1 << ", col " << v.col + 1 << ")";
        os << '\n';
    }
    return os.str();
}

struct NetFlags {
    long K = 0, L = 0, N = 0;
    std::string mt_text, mu_text;

    void attach(CLI::App* cmd, bool need_n) {
        cmd->add_option("--K", K, "number of users")->required();
        cmd->add_option("--L", L, "user connectivity")->required();
        cmd->add_option("--mt", mt_text, "transmitter cache ratio M_T/N")->required();
        cmd->add_option("--mu", mu_text, "user cache ratio M_U/N")->required();
        auto* n = cmd->add_option("--N", N, "number of files");
        if (need_n) n->required();
    }

    NetworkConfig to_config() const {
        NetworkConfig net;
        net.K = K;
        net.L = L;
        net.N = N > 0 ? N : K;
        net.mt = parse_rat_flag(mt_text, "--mt");
        net.mu = parse_rat_flag(mu_text, "--mu");
        return net;
    }
};

std::vector<Rat> parse_grid(const std::string& text) {
    // "a:b:step" inclusive range, or a comma-separated list
    std::vector<Rat> out;
    auto colon1 = text.find(':');
    if (colon1 != std::string::npos) {
        auto colon2 = text.find(':', colon1 + 1);
        if (colon2 == std::string::npos)
            throw CLI::ValidationError("--mu-grid", "expected start:stop:step");
        Rat a = parse_rat_flag(text.substr(0, colon1), "--mu-grid");
        Rat b = parse_rat_flag(text.substr(colon1 + 1, colon2 - colon1 - 1), "--mu-grid");
        Rat step = parse_rat_flag(text.substr(colon2 + 1), "--mu-grid");
        if (step <= Rat(0)) throw CLI::ValidationError("--mu-grid", "step must be positive");
        for (Rat x = a; x <= b; x += step) out.push_back(x);
        return out;
    }
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) out.push_back(parse_rat_flag(tok, "--mu-grid"));
    return out;
}

std::string comparison_table(const std::vector<ComparisonRecord>& recs) {
    std::ostringstream os;
    os << "K\tL\tmt\tmu\ttau_new\ttau_xtz\tF1\tF2\tF3\tF4\tF_xtz\tregime\n";
    auto cell = [](const std::optional<BigInt>& f) {
        if (!f) return std::string("-");
        return *f >= BigInt(1000000) ? format_sci2(*f) : f->str();
    };
    for (const auto& r : recs) {
        os << r.K << '\t' << r.L << '\t' << rat_to_string(r.mt) << '\t' << rat_to_string(r.mu)
           << '\t' << format_rounded(r.tau_new, 2) << '\t' << format_rounded(r.tau_xtz, 2) << '\t'
           << cell(r.subs.s1) << '\t' << cell(r.subs.s2) << '\t' << cell(r.subs.s3) << '\t'
           << cell(r.subs.s4) << '\t' << cell(r.f_xtz) << '\t' << regime_name(r.regime) << '\n';
    }
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coded caching for partially connected linear networks"};
    app.require_subcommand(1);

    std::string out_path, format = "table", scalar = "rational";
    std::optional<uint64_t> seed_flag;
    app.add_option("--out", out_path, "write output to this file")->each([](std::string) {});

    // verify
    auto* verify = app.add_subcommand("verify", "check an array file against conditions C1-C4");
    std::string verify_path;
    long verify_r = 0;
    verify->add_option("file", verify_path, "MAPDA text file")->required();
    verify->add_option("--r", verify_r, "antenna count override");
    verify->add_option("--out", out_path);

    // generate
    auto* generate = app.add_subcommand("generate", "emit a base array");
    std::string gen_base = "cyclic";
    long gen_K = 0, gen_z = 0, gen_r = 0;
    generate->add_option("--base", gen_base, "cyclic | mn | grouping")->required();
    generate->add_option("--K", gen_K)->required();
    generate->add_option("--z", gen_z, "stars per column")->required();
    generate->add_option("--r", gen_r, "antennas (grouping base)");
    generate->add_option("--out", out_path);

    // build
    auto* build = app.add_subcommand("build", "construct the user/transmitter arrays");
    NetFlags build_net;
    std::string build_base = "cyclic";
    build_net.attach(build, false);
    build->add_option("--base", build_base, "cyclic | grouping | mn | file:<path>");
    build->add_option("--out", out_path);

    // simulate
    auto* simulate_cmd = app.add_subcommand("simulate", "run one-shot linear delivery");
    NetFlags sim_net;
    std::string sim_base = "cyclic";
    std::vector<long> sim_demand;
    sim_net.attach(simulate_cmd, true);
    simulate_cmd->add_option("--base", sim_base, "cyclic | grouping | mn | file:<path>");
    simulate_cmd->add_option("--seed", seed_flag, "channel seed (or PCNET_SEED)");
    simulate_cmd->add_option("--demand", sim_demand, "demanded file per user (default <k>_N)");
    simulate_cmd->add_option("--scalar", scalar, "rational | complex");
    simulate_cmd->add_option("--out", out_path);

    // compare
    auto* compare = app.add_subcommand("compare", "NDT/subpacketization at one point");
    NetFlags cmp_net;
    cmp_net.attach(compare, false);
    compare->add_option("--format", format, "json | csv | table");
    compare->add_option("--out", out_path);

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "comparison over a mu grid");
    long sw_K = 0, sw_L = 0;
    std::string sw_mt, sw_grid, sw_csv;
    sweep_cmd->add_option("--K", sw_K)->required();
    sweep_cmd->add_option("--L", sw_L)->required();
    sweep_cmd->add_option("--mt", sw_mt)->required();
    sweep_cmd->add_option("--mu-grid", sw_grid, "start:stop:step or comma list")->required();
    sweep_cmd->add_option("--csv", sw_csv, "write CSV here");
    sweep_cmd->add_option("--format", format, "csv | table");
    sweep_cmd->add_option("--out", out_path);

    // catalog
    auto* catalog = app.add_subcommand("catalog", "known (F, Z, S) for a catalog row");
    int cat_row = 0;
    long cat_K = 0, cat_z = 0, cat_r = 0;
    std::optional<long> cat_m;
    catalog->add_option("--row", cat_row, "catalog row 1..10")->required();
    catalog->add_option("--K", cat_K)->required();
    catalog->add_option("--z", cat_z)->required();
    catalog->add_option("--r", cat_r)->required();
    catalog->add_option("--m", cat_m, "divisor parameter (rows 5-6)");
    catalog->add_option("--out", out_path);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*verify) {
            MapdaArray a = read_mapda_file(verify_path);
            if (verify_r > 0) a.antennas = verify_r;
            auto result = verify_mapda(a);
            if (std::holds_alternative<MapdaParams>(result)) {
                emit(params_line(std::get<MapdaParams>(result)), out_path);
                return 0;
            }
            emit(violations_text(std::get<std::vector<Violation>>(result)), out_path);
            return 1;
        }
        if (*generate) {
            MapdaArray a = gen_base == "grouping" ? gen_grouping_mapda(gen_K, gen_z, gen_r)
                                                  : load_base(gen_base, gen_K, gen_z, gen_r);
            emit(write_mapda(a), out_path);
            return 0;
        }
        if (*build) {
            NetworkConfig net = build_net.to_config();
            auto derived = derive_params(net);
            MapdaArray base = load_base(build_base, net.K, derived.z, derived.r);
            SchemePair scheme = build_scheme(base, net);
            emit(scheme_to_json(scheme), out_path);
            return 0;
        }
        if (*simulate_cmd) {
            NetworkConfig net = sim_net.to_config();
            auto derived = derive_params(net);
            MapdaArray base = load_base(sim_base, net.K, derived.z, derived.r);
            SchemePair scheme = build_scheme(base, net);
            std::vector<long> demand = sim_demand.empty() ? default_demand(net) : sim_demand;
            ScalarMode mode = scalar == "complex" ? ScalarMode::Complex : ScalarMode::Rational;
            SimulationReport report = simulate(scheme, demand, pick_seed(seed_flag), mode);
            emit(report_to_json(report, scheme), out_path);
            return report.ok ? 0 : 1;
        }
        if (*compare) {
            NetworkConfig net = cmp_net.to_config();
            ComparisonRecord rec = compare_point(net.K, net.L, net.mt, net.mu);
            if (format == "json")
                emit(record_to_json(rec), out_path);
            else if (format == "csv")
                emit(records_to_csv({rec}), out_path);
            else
                emit(comparison_table({rec}), out_path);
            return 0;
        }
        if (*sweep_cmd) {
            Rat mt = parse_rat_flag(sw_mt, "--mt");
            auto recs = sweep(sw_K, sw_L, {mt}, parse_grid(sw_grid));
            if (!sw_csv.empty()) emit(records_to_csv(recs), sw_csv);
            if (format == "csv")
                emit(records_to_csv(recs), out_path);
            else if (sw_csv.empty())
                emit(comparison_table(recs), out_path);
            return 0;
        }
        if (*catalog) {
            CatalogResult res = catalog_params(cat_row, cat_K, cat_z, cat_r, cat_m);
            std::ostringstream os;
            os << "F=" << res.F.str() << " Z=" << res.Z.str() << " S=" << res.S.str();
            emit(os.str(), out_path);
            return 0;
        }
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
