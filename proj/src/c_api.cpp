#include "locclab/locclab.h"

#include <new>
#include <string>
#include <utility>

#include "locclab/error.hpp"
#include "locclab/reports.hpp"

struct locc_ensemble {
    locc::EnsembleFile file;
};

struct locc_upb {
    locc::UpbCandidate upb;
};

struct locc_report {
    std::string text;
    int outcome = LOCC_OK;
};

namespace {

thread_local std::string g_last_error;

template <class F>
locc_status guarded(F&& f) {
    try {
        f();
        return LOCC_OK;
    } catch (const locc::ConvergenceError& e) {
        g_last_error = e.what();
        return LOCC_ERR_NONCONVERGENCE;
    } catch (const locc::ValidationError& e) {
        g_last_error = e.what();
        return LOCC_ERR_VALIDATION;
    } catch (const nlohmann::json::exception& e) {
        g_last_error = std::string("malformed input: ") + e.what();
        return LOCC_ERR_VALIDATION;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return LOCC_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return LOCC_ERR_INTERNAL;
    }
}

locc_status bad_argument(const char* what) {
    g_last_error = what;
    return LOCC_ERR_ARGUMENT;
}

locc::RunConfig to_run_config(const locc_config* c) {
    locc_config def;
    locc_config_default(&def);
    if (!c) c = &def;
    locc::RunConfig rc;
    rc.seed = c->seed;
    rc.trials = c->trials;
    rc.seesaw.restarts = c->restarts;
    rc.seesaw.max_iters = c->max_iters;
    rc.seesaw.success_gap = c->success_gap;
    rc.seesaw.seed = c->seed;
    rc.max_copies = c->max_copies;
    rc.allow_large = c->allow_large != 0;
    if (c->format != LOCC_FORMAT_JSON && c->format != LOCC_FORMAT_CSV)
        throw locc::ValidationError("unknown output format");
    rc.format = c->format == LOCC_FORMAT_CSV ? locc::OutputFormat::Csv : locc::OutputFormat::Json;
    rc.timestamp = c->timestamp != 0;
    locc::validate(rc);
    return rc;
}

locc_report* make_report(std::string text, int outcome = LOCC_OK) {
    auto* r = new locc_report;
    r->text = std::move(text);
    r->outcome = outcome;
    return r;
}

std::string render(const locc::json& j) { return j.dump(2) + "\n"; }

}  // namespace

extern "C" {

void locc_config_default(locc_config* cfg) {
    if (!cfg) return;
    cfg->seed = 1;
    cfg->trials = 1000;
    cfg->restarts = 200;
    cfg->max_iters = 5000;
    cfg->success_gap = 1e-6;
    cfg->max_copies = locc::kDefaultCopyCap;
    cfg->allow_large = 0;
    cfg->format = LOCC_FORMAT_JSON;
    cfg->timestamp = 1;
}

const char* locc_last_error(void) { return g_last_error.c_str(); }

const char* locc_version(void) { return "0.1.0"; }

// ---------------------------------------------------------------------------

locc_status locc_ensemble_from_json(const char* text, locc_ensemble** out) {
    if (!text || !out) return bad_argument("null argument");
    return guarded([&] {
        *out = new locc_ensemble{locc::ensemble_from_json(locc::json::parse(text))};
    });
}

locc_status locc_ensemble_load(const char* path, locc_ensemble** out) {
    if (!path || !out) return bad_argument("null argument");
    return guarded([&] { *out = new locc_ensemble{locc::ensemble_from_json(locc::read_json_file(path))}; });
}

locc_status locc_ensemble_save(const locc_ensemble* e, const char* path) {
    if (!e || !path) return bad_argument("null argument");
    return guarded([&] { locc::write_json_file(path, locc::to_json(e->file)); });
}

locc_status locc_ensemble_to_json(const locc_ensemble* e, locc_report** out) {
    if (!e || !out) return bad_argument("null argument");
    return guarded([&] { *out = make_report(render(locc::to_json(e->file))); });
}

int locc_ensemble_size(const locc_ensemble* e) { return e ? int(e->file.members.size()) : 0; }

int locc_ensemble_is_pure(const locc_ensemble* e) { return e && e->file.all_pure() ? 1 : 0; }

int locc_ensemble_total_dim(const locc_ensemble* e) { return e ? e->file.members[0].shape().total() : 0; }

void locc_ensemble_free(locc_ensemble* e) { delete e; }

// ---------------------------------------------------------------------------

locc_status locc_upb_tiles(locc_upb** out) {
    if (!out) return bad_argument("null argument");
    return guarded([&] { *out = new locc_upb{locc::catalog_tiles()}; });
}

locc_status locc_upb_from_json(const char* text, locc_upb** out) {
    if (!text || !out) return bad_argument("null argument");
    return guarded([&] { *out = new locc_upb{locc::upb_from_json(locc::json::parse(text))}; });
}

locc_status locc_upb_load(const char* path, locc_upb** out) {
    if (!path || !out) return bad_argument("null argument");
    return guarded([&] { *out = new locc_upb{locc::upb_from_json(locc::read_json_file(path))}; });
}

locc_status locc_upb_save(const locc_upb* u, const char* path) {
    if (!u || !path) return bad_argument("null argument");
    return guarded([&] { locc::write_json_file(path, locc::to_json(u->upb)); });
}

int locc_upb_size(const locc_upb* u) { return u ? int(u->upb.members.size()) : 0; }

void locc_upb_free(locc_upb* u) { delete u; }

locc_status locc_upb_tensor(const locc_upb* x, const locc_upb* y, locc_upb** out) {
    if (!x || !y || !out) return bad_argument("null argument");
    return guarded([&] { *out = new locc_upb{locc::tensor_upb(x->upb, y->upb)}; });
}

locc_status locc_upb_verify(const locc_upb* u, const locc_config* cfg, locc_report** out) {
    if (!u || !out) return bad_argument("null argument");
    return guarded([&] {
        locc::RunConfig rc = to_run_config(cfg);
        locc::UpbVerdict v = locc::verify_upb(u->upb, rc.seesaw);
        int outcome = (v.status == locc::UpbStatus::VerifiedUpb && v.restarts_converged < v.restarts_used)
                          ? LOCC_ERR_NONCONVERGENCE
                          : LOCC_OK;
        std::string text = rc.format == locc::OutputFormat::Csv ? locc::report_csv(v, u->upb)
                                                                : render(locc::report_json(v, u->upb, rc));
        *out = make_report(std::move(text), outcome);
    });
}

locc_status locc_make_sigma_rho(const locc_upb* u, locc_rho_kind kind, int rank, uint64_t rho_seed, int copies,
                                int allow_large, locc_ensemble** out) {
    if (!u || !out) return bad_argument("null argument");
    return guarded([&] {
        locc::RhoSpec spec;
        switch (kind) {
            case LOCC_RHO_MAXIMALLY_MIXED_COMPLEMENT: spec.kind = locc::RhoKind::MaximallyMixedComplement; break;
            case LOCC_RHO_RANDOM_RANK: spec.kind = locc::RhoKind::RandomRank; break;
            case LOCC_RHO_PURE_IN_COMPLEMENT: spec.kind = locc::RhoKind::PureInComplement; break;
            default: throw locc::ValidationError("unknown rho kind");
        }
        spec.rank = rank;
        spec.seed = rho_seed;
        auto ens = locc::make_sigma_rho(u->upb, spec, copies, allow_large != 0);
        std::string id = u->upb.name + "-sigma-rho-n" + std::to_string(copies);
        *out = new locc_ensemble{locc::ensemble_from_sigma_rho(ens, id)};
    });
}

// ---------------------------------------------------------------------------

locc_status locc_distinguish(const locc_ensemble* e, int true_index, const locc_config* cfg, locc_report** out) {
    if (!e || !out) return bad_argument("null argument");
    return guarded([&] {
        locc::RunConfig rc = to_run_config(cfg);
        std::optional<int> truth;
        if (true_index >= 0) truth = true_index;
        auto rep = locc::run_distinguish(e->file, truth, rc);
        std::string text = rc.format == locc::OutputFormat::Csv ? locc::report_csv(rep)
                                                                : render(locc::report_json(rep, rc));
        *out = make_report(std::move(text));
    });
}

locc_status locc_classify(const locc_ensemble* e, const locc_config* cfg, locc_report** out) {
    if (!e || !out) return bad_argument("null argument");
    return guarded([&] {
        locc::RunConfig rc = to_run_config(cfg);
        auto res = locc::classify(e->file, rc);
        int outcome = res.class_label == locc::EnsembleClass::Undetermined ? LOCC_ERR_NONCONVERGENCE : LOCC_OK;
        std::string text = rc.format == locc::OutputFormat::Csv ? locc::report_csv(res)
                                                                : render(locc::report_json(res, rc));
        *out = make_report(std::move(text), outcome);
    });
}

locc_status locc_max_product_overlap(const double* p, int dim_a, int dim_b, const locc_config* cfg,
                                     double* value_out, double* a_out, double* b_out) {
    if (!p || !value_out) return bad_argument("null argument");
    return guarded([&] {
        locc::RunConfig rc = to_run_config(cfg);
        locc::SpaceShape shape(dim_a, dim_b);
        const int d = shape.total();
        locc::Mat m(d, d);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) m(r, c) = {p[2 * (r * d + c)], p[2 * (r * d + c) + 1]};
        auto res = locc::max_product_overlap(m, shape, rc.seesaw);
        *value_out = res.value;
        if (a_out)
            for (int i = 0; i < dim_a; ++i) {
                a_out[2 * i] = res.maximizer->a_part()[i].real();
                a_out[2 * i + 1] = res.maximizer->a_part()[i].imag();
            }
        if (b_out)
            for (int i = 0; i < dim_b; ++i) {
                b_out[2 * i] = res.maximizer->b_part()[i].real();
                b_out[2 * i + 1] = res.maximizer->b_part()[i].imag();
            }
    });
}

const char* locc_report_text(const locc_report* r) { return r ? r->text.c_str() : ""; }

int locc_report_outcome(const locc_report* r) { return r ? r->outcome : LOCC_ERR_ARGUMENT; }

void locc_report_free(locc_report* r) { delete r; }

}  // extern "C"
