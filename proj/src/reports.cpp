#include "locclab/reports.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <sstream>

#include "locclab/error.hpp"

namespace locc {

namespace {

constexpr double kPureCutoff = 1e-9;
constexpr int kMaxClassifyDimension = 729;

std::optional<PureState> rank_one_form(const DensityOperator& rho) {
    Eigen::SelfAdjointEigenSolver<Mat> es((rho.matrix() + rho.matrix().adjoint()) * 0.5);
    const Eigen::Index last = es.eigenvalues().size() - 1;
    if (es.eigenvalues()[last] < 1.0 - kPureCutoff) return std::nullopt;
    Vec v = es.eigenvectors().col(last);
    // fix the global phase on the largest entry so output is reproducible
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    v *= std::abs(v[arg]) / v[arg];
    return PureState(rho.shape(), v.normalized());
}

std::string fmt_double(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

std::string slot_name(BobSlot s) {
    switch (s) {
        case BobSlot::Phi: return "phi";
        case BobSlot::PhiPerp: return "phi_perp";
        case BobSlot::Eta: return "eta";
    }
    return "eta";
}

json histogram_json(const std::map<int, int>& h) {
    json out = json::object();
    for (const auto& [copies, freq] : h) out[std::to_string(copies)] = freq;
    return out;
}

json stats_json(const TrialStats& s) {
    return {{"trials", s.trials},
            {"correct", s.correct},
            {"success_rate", s.trials ? double(s.correct) / s.trials : 0.0},
            {"max_copies", s.max_copies},
            {"copies_histogram", histogram_json(s.copies_histogram)}};
}

void stamp(json& j, const RunConfig& cfg) {
    if (cfg.timestamp) j["generated_at"] = utc_timestamp();
}

}  // namespace

void validate(const RunConfig& cfg) {
    if (cfg.trials < 1) throw ValidationError("--trials must be at least 1");
    if (cfg.max_copies < 1) throw ValidationError("--max-copies must be at least 1");
    check_copy_cap(cfg.max_copies, cfg.allow_large);
    validate(cfg.seesaw);
}

// ---------------------------------------------------------------------------

bool EnsembleFile::all_pure() const {
    for (const auto& p : pure_forms)
        if (!p) return false;
    return true;
}

EnsemblePure EnsembleFile::as_pure() const {
    std::vector<PureState> states;
    for (const auto& p : pure_forms) {
        if (!p) throw ValidationError("ensemble contains mixed states; use classify");
        states.push_back(*p);
    }
    return EnsemblePure(std::move(states), labels);
}

EnsembleFile ensemble_from_json(const json& j) {
    if (!j.is_object() || !j.contains("states") || !j["states"].is_array())
        throw ValidationError("ensemble file needs a \"states\" array");
    EnsembleFile e;
    e.id = j.contains("id") && j["id"].is_string() ? j["id"].get<std::string>() : "ensemble";
    for (const auto& s : j["states"]) {
        e.labels.push_back(s.contains("label") && s["label"].is_string() ? s["label"].get<std::string>()
                                                                         : std::to_string(e.labels.size()));
        if (s.contains("amplitudes")) {
            PureState psi = pure_state_from_json(s);
            e.members.push_back(DensityOperator::from_pure(psi));
            e.pure_forms.emplace_back(std::move(psi));
        } else {
            DensityOperator rho = density_from_json(s);
            e.pure_forms.push_back(rank_one_form(rho));
            e.members.push_back(std::move(rho));
        }
    }
    if (e.members.empty()) throw ValidationError("ensemble file has no states");
    for (const auto& m : e.members)
        if (!(m.shape() == e.members[0].shape())) throw ValidationError("ensemble states differ in shape");
    if (j.contains("upb_source")) {
        const json& src = j["upb_source"];
        if (!src.is_object() || !src.contains("upb")) throw ValidationError("\"upb_source\" needs a \"upb\" field");
        UpbSource u{upb_from_json(src["upb"]), src.value("copies", 1), src.value("sigma_index", 0)};
        if (u.copies < 1) throw ValidationError("upb_source copies must be positive");
        if (u.sigma_index < 0 || u.sigma_index >= int(e.members.size()))
            throw ValidationError("upb_source sigma_index out of range");
        e.upb_source = std::move(u);
    }
    return e;
}

json to_json(const EnsembleFile& e) {
    json states = json::array();
    for (std::size_t i = 0; i < e.members.size(); ++i) {
        json s = e.pure_forms[i] ? to_json(*e.pure_forms[i]) : to_json(e.members[i]);
        s["label"] = e.labels[i];
        states.push_back(std::move(s));
    }
    json out = {{"id", e.id}, {"states", std::move(states)}};
    if (e.upb_source)
        out["upb_source"] = {{"upb", to_json(e.upb_source->upb)},
                             {"copies", e.upb_source->copies},
                             {"sigma_index", e.upb_source->sigma_index}};
    return out;
}

EnsembleFile ensemble_from_sigma_rho(const SigmaRhoEnsemble& ens, const std::string& id) {
    EnsembleFile e;
    e.id = id;
    e.labels = {"sigma", "rho"};
    e.members = ens.members();
    e.pure_forms = {std::nullopt, rank_one_form(ens.rho)};
    e.upb_source = UpbSource{ens.base, ens.copies, 0};
    return e;
}

// ---------------------------------------------------------------------------

DistinguishReport run_distinguish(const EnsembleFile& e, std::optional<int> true_index, const RunConfig& cfg) {
    validate(cfg);
    EnsemblePure ens = e.as_pure();
    if (true_index && (*true_index < 0 || *true_index >= ens.size()))
        throw ValidationError("--true-index out of range");
    DistinguishReport r;
    r.ensemble_id = e.id;
    r.ensemble_size = ens.size();
    r.true_index = true_index;
    r.seed = cfg.seed;
    r.stats = run_trials(ens, cfg.trials, cfg.seed, true_index);

    // replay trial 0 for its transcript
    std::uint64_t trial_seed = derive_seed(cfg.seed, 0);
    int truth = true_index.value_or(-1);
    if (truth < 0) {
        Rng pick(trial_seed);
        truth = int(uniform01(pick) * ens.size());
    }
    r.example = distinguish(ens, truth, derive_seed(trial_seed, 0));
    return r;
}

// ---------------------------------------------------------------------------

std::string to_string(EnsembleClass c) {
    switch (c) {
        case EnsembleClass::A: return "a";
        case EnsembleClass::B: return "b";
        case EnsembleClass::CCandidate: return "c-candidate";
        case EnsembleClass::Undetermined: return "undetermined";
    }
    return "undetermined";
}

namespace {

bool check_upb_source(const EnsembleFile& e, const RunConfig& cfg) {
    if (!e.upb_source) return false;
    const UpbSource& src = *e.upb_source;
    UpbCandidate power = upb_power(src.upb, src.copies);
    if (!(power.shape == e.members[0].shape())) return false;
    if (power.gram_error() >= 1e-12) return false;
    DensityOperator sigma = normalized_projector(power.span());
    const Mat& claimed = e.members[std::size_t(src.sigma_index)].matrix();
    if ((claimed - sigma.matrix()).cwiseAbs().maxCoeff() >= 1e-9) return false;
    return verify_upb(src.upb, cfg.seesaw).status == UpbStatus::VerifiedUpb;
}

}  // namespace

ClassificationResult classify(const EnsembleFile& e, const RunConfig& cfg) {
    validate(cfg);
    ClassificationResult res;
    res.ensemble_id = e.id;
    res.seed = cfg.seed;

    if (e.all_pure()) {
        EnsemblePure ens = e.as_pure();
        TrialStats stats = run_trials(ens, cfg.trials, cfg.seed);
        res.n_copies_tested = {stats.max_copies};
        res.class_label = stats.correct == stats.trials ? EnsembleClass::A : EnsembleClass::Undetermined;
        res.protocol = std::move(stats);
        return res;
    }

    require_orthogonal(e.members);
    res.upb_certified = check_upb_source(e, cfg);

    const int targets = int(e.members.size());
    std::vector<int> never_witnessed_all_n(std::size_t(targets), 1);  // no-witness-heuristic at every n so far
    const int base_dim = e.members[0].shape().total();

    for (int n = 1; n <= cfg.max_copies; ++n) {
        check_copy_cap(n, cfg.allow_large);
        if (std::pow(double(base_dim), n) > kMaxClassifyDimension) {
            if (n == 1) throw ValidationError("ensemble dimension exceeds " + std::to_string(kMaxClassifyDimension));
            break;  // larger n are out of reach; classify on what was tested
        }
        std::vector<DensityOperator> powered;
        for (const auto& m : e.members) powered.push_back(tensor_power(m, n));

        std::vector<ProductState> seeds;
        if (e.upb_source) {
            UpbCandidate p = upb_power(e.upb_source->upb, e.upb_source->copies * n);
            if (p.shape == powered[0].shape()) seeds = p.members;
        }

        res.n_copies_tested.push_back(n);
        bool all_found = true;
        for (int t = 0; t < targets; ++t) {
            SeesawConfig sc = cfg.seesaw;
            sc.seed = derive_seed(cfg.seesaw.seed, std::uint64_t(n * 1000 + t));
            WitnessReport rep = conclusive_witness(powered, t, sc, seeds);
            if (rep.verdict != WitnessVerdict::WitnessFound) all_found = false;
            if (rep.verdict != WitnessVerdict::NoWitnessHeuristic) never_witnessed_all_n[std::size_t(t)] = 0;
            res.witnesses.push_back({n, std::move(rep)});
        }
        if (all_found) {
            res.class_label = EnsembleClass::B;
            return res;
        }
    }
    for (int t = 0; t < targets; ++t)
        if (never_witnessed_all_n[std::size_t(t)]) {
            res.class_label = EnsembleClass::CCandidate;
            return res;
        }
    res.class_label = EnsembleClass::Undetermined;
    return res;
}

// ---------------------------------------------------------------------------

json report_json(const DistinguishReport& r, const RunConfig& cfg) {
    json j = {{"command", "distinguish"},
              {"ensemble_id", r.ensemble_id},
              {"ensemble_size", r.ensemble_size},
              {"true_index", r.true_index ? json(*r.true_index) : json(nullptr)},
              {"seed", r.seed},
              {"copies_bound", r.ensemble_size - 1}};
    j.update(stats_json(r.stats));
    if (r.example) {
        json rounds = json::array();
        for (const auto& t : r.example->transcripts)
            rounds.push_back({{"copy_index", t.copy_index},
                              {"pair", {t.pair_first, t.pair_second}},
                              {"alice_outcome", t.alice_outcome},
                              {"bob_outcome", t.bob_outcome},
                              {"bob_slot", slot_name(t.bob_slot)},
                              {"eliminated", t.eliminated},
                              {"survivors", t.survivors}});
        j["example"] = {{"identified", r.example->identified},
                        {"copies_used", r.example->copies_used},
                        {"rounds", std::move(rounds)}};
    }
    stamp(j, cfg);
    return j;
}

json report_json(const ClassificationResult& r, const RunConfig& cfg) {
    json wit = json::array();
    for (const auto& w : r.witnesses) {
        json one = to_json(w.report);
        one["n"] = w.copies;
        wit.push_back(std::move(one));
    }
    json j = {{"command", "classify"},
              {"ensemble_id", r.ensemble_id},
              {"class", to_string(r.class_label)},
              {"upb_certified", r.upb_certified},
              {"n_copies_tested", r.n_copies_tested},
              {"protocol", r.protocol ? stats_json(*r.protocol) : json(nullptr)},
              {"witnesses", std::move(wit)},
              {"seed", r.seed}};
    stamp(j, cfg);
    return j;
}

json report_json(const UpbVerdict& v, const UpbCandidate& c, const RunConfig& cfg) {
    json j = {{"command", "upb-verify"},
              {"name", c.name},
              {"dim_a", c.shape.dim_a},
              {"dim_b", c.shape.dim_b},
              {"members", c.members.size()}};
    j.update(to_json(v));
    stamp(j, cfg);
    return j;
}

std::string report_csv(const ClassificationResult& r) {
    std::ostringstream os;
    os << "ensemble_id,n,target,verdict,best_overlap,seed\n";
    if (r.protocol) {
        os << r.ensemble_id << ',' << r.protocol->max_copies << ",*,"
           << (r.protocol->correct == r.protocol->trials ? "protocol-success" : "protocol-failure") << ",," << r.seed
           << '\n';
    }
    for (const auto& w : r.witnesses)
        os << r.ensemble_id << ',' << w.copies << ',' << w.report.target_index << ',' << to_string(w.report.verdict)
           << ',' << fmt_double(w.report.best_overlap) << ',' << w.report.seed << '\n';
    return os.str();
}

std::string report_csv(const UpbVerdict& v, const UpbCandidate& c) {
    std::ostringstream os;
    os << "ensemble_id,n,target,verdict,best_overlap,seed\n";
    os << c.name << ",1,complement," << to_string(v.status) << ',' << fmt_double(v.best_overlap) << ',' << v.seed
       << '\n';
    return os.str();
}

std::string report_csv(const DistinguishReport& r) {
    std::ostringstream os;
    os << "ensemble_id,copies_used,frequency,seed\n";
    for (const auto& [copies, freq] : r.stats.copies_histogram)
        os << r.ensemble_id << ',' << copies << ',' << freq << ',' << r.seed << '\n';
    return os.str();
}

std::string utc_timestamp() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace locc
