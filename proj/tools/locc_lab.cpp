// locc-lab: command-line front end over the locclab C API.
//
//   locc-lab distinguish --ensemble bell4.json --trials 1000 --seed 7
//   locc-lab classify --ensemble sigma_rho.json --max-copies 2
//   locc-lab upb verify tiles.json
//   locc-lab upb tensor tiles.json tiles.json -o tiles2.json
//   locc-lab upb make-sigma-rho tiles.json --n 2 -o sigma_rho.json
//   locc-lab upb tiles -o tiles.json
//
// Exit codes: 0 success, 2 validation error, 3 numerical non-convergence.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "locclab/locclab.h"

namespace {

int fail(locc_status st) {
    std::cerr << "locc-lab: " << locc_last_error() << "\n";
    return st == LOCC_ERR_NONCONVERGENCE ? 3 : (st == LOCC_ERR_INTERNAL ? 1 : 2);
}

int emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "locc-lab: cannot write " << out_path << "\n";
        return 2;
    }
    out << text;
    return 0;
}

// Prints the report and maps its outcome to an exit code.
int finish(locc_report* rep, const std::string& out_path) {
    int rc = emit(locc_report_text(rep), out_path);
    int outcome = locc_report_outcome(rep);
    locc_report_free(rep);
    if (rc != 0) return rc;
    return outcome == LOCC_ERR_NONCONVERGENCE ? 3 : 0;
}

struct UpbHandle {
    locc_upb* p = nullptr;
    ~UpbHandle() { locc_upb_free(p); }
};

struct EnsembleHandle {
    locc_ensemble* p = nullptr;
    ~EnsembleHandle() { locc_ensemble_free(p); }
};

locc_status load_upb(const std::string& path, UpbHandle& h) {
    if (path == "tiles") return locc_upb_tiles(&h.p);
    return locc_upb_load(path.c_str(), &h.p);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-copy LOCC state discrimination lab"};
    app.require_subcommand(1);
    app.fallthrough();

    locc_config cfg;
    locc_config_default(&cfg);
    std::string format = "json";
    bool no_timestamp = false;
    std::string out_path;

    app.add_option("--seed", cfg.seed, "RNG seed for trials and see-saw restarts");
    app.add_option("--trials", cfg.trials, "protocol trials")->check(CLI::PositiveNumber);
    app.add_option("--restarts", cfg.restarts, "see-saw restarts")->check(CLI::PositiveNumber);
    app.add_option("--max-iters", cfg.max_iters, "see-saw iterations per restart")->check(CLI::PositiveNumber);
    app.add_option("--success-gap", cfg.success_gap, "product overlap >= 1 - gap counts as found");
    app.add_option("--max-copies", cfg.max_copies, "largest copy count tested")->check(CLI::PositiveNumber);
    app.add_flag("--allow-large", cfg.allow_large, "allow 3-copy constructions");
    app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));
    app.add_flag("--no-timestamp", no_timestamp, "omit generated_at from reports");
    app.add_option("-o,--output", out_path, "write the result here instead of stdout");

    std::string ensemble_path;
    int true_index = -1;
    auto* dist = app.add_subcommand("distinguish", "run the copy-by-copy elimination protocol");
    dist->add_option("--ensemble", ensemble_path, "ensemble JSON file")->required();
    dist->add_option("--true-index", true_index, "fix the prepared state (default: uniform per trial)");

    auto* cls = app.add_subcommand("classify", "place an ensemble in class a / b / c-candidate");
    cls->add_option("--ensemble", ensemble_path, "ensemble JSON file")->required();

    auto* upb = app.add_subcommand("upb", "UPB tools");
    upb->require_subcommand(1);
    std::string upb_path, upb_path2;
    auto* verify = upb->add_subcommand("verify", "check orthogonality and unextendibility");
    verify->add_option("file", upb_path, "UPB JSON file, or 'tiles'")->required();
    auto* tens = upb->add_subcommand("tensor", "party-wise tensor product of two UPBs");
    tens->add_option("first", upb_path, "UPB JSON file, or 'tiles'")->required();
    tens->add_option("second", upb_path2, "UPB JSON file, or 'tiles'")->required();
    auto* msr = upb->add_subcommand("make-sigma-rho", "build the sigma/rho ensemble of a UPB");
    msr->add_option("file", upb_path, "UPB JSON file, or 'tiles'")->required();
    int copies = 1;
    std::string rho_kind = "maximally-mixed-complement";
    int rho_rank = 1;
    std::uint64_t rho_seed = 0;
    msr->add_option("--n", copies, "number of copies")->check(CLI::PositiveNumber);
    msr->add_option("--rho", rho_kind, "rho construction")
        ->check(CLI::IsMember({"maximally-mixed-complement", "random-rank-k", "pure-in-complement"}));
    msr->add_option("--rank", rho_rank, "rank for random-rank-k")->check(CLI::PositiveNumber);
    msr->add_option("--rho-seed", rho_seed, "seed for random rho constructions");
    auto* tiles = upb->add_subcommand("tiles", "write the built-in Tiles UPB");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    cfg.format = format == "csv" ? LOCC_FORMAT_CSV : LOCC_FORMAT_JSON;
    cfg.timestamp = no_timestamp ? 0 : 1;

    if (*dist || *cls) {
        EnsembleHandle ens;
        if (auto st = locc_ensemble_load(ensemble_path.c_str(), &ens.p); st != LOCC_OK) return fail(st);
        locc_report* rep = nullptr;
        locc_status st = *dist ? locc_distinguish(ens.p, true_index, &cfg, &rep) : locc_classify(ens.p, &cfg, &rep);
        if (st != LOCC_OK) return fail(st);
        return finish(rep, out_path);
    }

    if (*verify) {
        UpbHandle u;
        if (auto st = load_upb(upb_path, u); st != LOCC_OK) return fail(st);
        locc_report* rep = nullptr;
        if (auto st = locc_upb_verify(u.p, &cfg, &rep); st != LOCC_OK) return fail(st);
        return finish(rep, out_path);
    }

    if (*tens || *tiles) {
        UpbHandle result;
        if (*tiles) {
            if (auto st = locc_upb_tiles(&result.p); st != LOCC_OK) return fail(st);
        } else {
            UpbHandle x, y;
            if (auto st = load_upb(upb_path, x); st != LOCC_OK) return fail(st);
            if (auto st = load_upb(upb_path2, y); st != LOCC_OK) return fail(st);
            if (auto st = locc_upb_tensor(x.p, y.p, &result.p); st != LOCC_OK) return fail(st);
        }
        if (out_path.empty()) out_path = "/dev/stdout";
        if (auto st = locc_upb_save(result.p, out_path.c_str()); st != LOCC_OK) return fail(st);
        if (out_path != "/dev/stdout")
            std::cerr << "wrote " << locc_upb_size(result.p) << "-member UPB to " << out_path << "\n";
        return 0;
    }

    if (*msr) {
        static const std::map<std::string, locc_rho_kind> kinds = {
            {"maximally-mixed-complement", LOCC_RHO_MAXIMALLY_MIXED_COMPLEMENT},
            {"random-rank-k", LOCC_RHO_RANDOM_RANK},
            {"pure-in-complement", LOCC_RHO_PURE_IN_COMPLEMENT}};
        UpbHandle u;
        if (auto st = load_upb(upb_path, u); st != LOCC_OK) return fail(st);
        EnsembleHandle ens;
        if (auto st = locc_make_sigma_rho(u.p, kinds.at(rho_kind), rho_rank, rho_seed, copies, cfg.allow_large, &ens.p);
            st != LOCC_OK)
            return fail(st);
        if (out_path.empty()) {
            locc_report* rep = nullptr;
            if (auto st = locc_ensemble_to_json(ens.p, &rep); st != LOCC_OK) return fail(st);
            return finish(rep, out_path);
        }
        if (auto st = locc_ensemble_save(ens.p, out_path.c_str()); st != LOCC_OK) return fail(st);
        std::cerr << "wrote " << locc_ensemble_total_dim(ens.p) << "-dimensional sigma/rho ensemble to " << out_path
                  << "\n";
        return 0;
    }
    return 2;
}
