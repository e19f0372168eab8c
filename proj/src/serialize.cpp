#include "locclab/serialize.hpp"

#include <fstream>
#include <sstream>

#include "locclab/error.hpp"

namespace locc {

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

int positive_int(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_integer() || v.get<long long>() < 1)
        throw ValidationError(std::string("field \"") + key + "\" must be a positive integer");
    return v.get<int>();
}

SpaceShape shape_from_json(const json& j) { return {positive_int(j, "dim_a"), positive_int(j, "dim_b")}; }

cplx cplx_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ValidationError("complex numbers must be [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

json to_json(const Vec& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v[i].real(), v[i].imag()});
    return out;
}

Vec vec_from_json(const json& j) {
    if (!j.is_array()) throw ValidationError("expected an array of [re, im] pairs");
    Vec v(Eigen::Index(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v[Eigen::Index(i)] = cplx_from_json(j[i]);
    return v;
}

json to_json(const PureState& s) {
    return {{"dim_a", s.shape().dim_a}, {"dim_b", s.shape().dim_b}, {"amplitudes", to_json(s.amplitudes())}};
}

json to_json(const DensityOperator& rho) {
    const Mat& m = rho.matrix();
    json flat = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) flat.push_back({m(r, c).real(), m(r, c).imag()});
    return {{"dim_a", rho.shape().dim_a}, {"dim_b", rho.shape().dim_b}, {"matrix", std::move(flat)}};
}

json to_json(const ProductState& p) { return {{"a", to_json(p.a_part())}, {"b", to_json(p.b_part())}}; }

json to_json(const UpbCandidate& c) {
    json members = json::array();
    for (const auto& m : c.members) members.push_back(to_json(m));
    return {{"name", c.name}, {"dim_a", c.shape.dim_a}, {"dim_b", c.shape.dim_b}, {"members", std::move(members)}};
}

json to_json(const CanonicalPair& pair) {
    json basis = json::array();
    for (Eigen::Index c = 0; c < pair.alice_basis.cols(); ++c) basis.push_back(to_json(Vec(pair.alice_basis.col(c))));
    json phis = json::array(), perps = json::array();
    for (const auto& v : pair.phis) phis.push_back(to_json(v));
    for (const auto& v : pair.phi_perps) perps.push_back(to_json(v));
    return {{"dim_a", pair.shape.dim_a},
            {"dim_b", pair.shape.dim_b},
            {"alice_basis", std::move(basis)},
            {"phis", std::move(phis)},
            {"phi_perps", std::move(perps)}};
}

json to_json(const WitnessReport& r) {
    return {{"target", r.target_index},
            {"verdict", to_string(r.verdict)},
            {"best_overlap", r.best_overlap},
            {"witness", r.witness ? to_json(*r.witness) : json(nullptr)},
            {"restarts_used", r.restarts_used},
            {"restarts_converged", r.restarts_converged},
            {"min_restart_overlap", r.min_restart_overlap},
            {"kernel_rank", r.kernel_rank},
            {"seed", r.seed}};
}

json to_json(const UpbVerdict& v) {
    return {{"verdict", to_string(v.status)},
            {"gram_error", v.gram_error},
            {"complement_rank", v.complement_rank},
            {"witness", v.witness ? to_json(*v.witness) : json(nullptr)},
            {"best_overlap", v.best_overlap},
            {"min_restart_overlap", v.min_restart_overlap},
            {"restarts_used", v.restarts_used},
            {"restarts_converged", v.restarts_converged},
            {"seed", v.seed}};
}

PureState pure_state_from_json(const json& j) {
    SpaceShape shape = shape_from_json(j);
    return PureState(shape, vec_from_json(field(j, "amplitudes")));
}

DensityOperator density_from_json(const json& j) {
    SpaceShape shape = shape_from_json(j);
    if (j.contains("amplitudes")) return DensityOperator::from_pure(pure_state_from_json(j));
    Vec flat = vec_from_json(field(j, "matrix"));
    const Eigen::Index d = shape.total();
    if (flat.size() != d * d) throw ValidationError("matrix must have (dim_a*dim_b)^2 entries");
    Mat m(d, d);
    for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index c = 0; c < d; ++c) m(r, c) = flat[r * d + c];
    return DensityOperator(shape, std::move(m));
}

ProductState product_state_from_json(const json& j) {
    return ProductState(vec_from_json(field(j, "a")), vec_from_json(field(j, "b")));
}

UpbCandidate upb_from_json(const json& j) {
    SpaceShape shape = shape_from_json(j);
    std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "upb";
    const json& ms = field(j, "members");
    if (!ms.is_array()) throw ValidationError("\"members\" must be an array");
    std::vector<ProductState> members;
    for (const auto& m : ms) members.push_back(product_state_from_json(m));
    return UpbCandidate(std::move(name), shape, std::move(members));
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace locc
