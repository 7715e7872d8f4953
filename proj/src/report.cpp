#include "lvoa/report.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace lvoa {

namespace {

constexpr std::size_t kMaxListedFailures = 5;

void require(bool ok, const std::string& message) {
    if (!ok) throw UsageError(message);
}

void require_cutoff(const Rational& cutoff) { require(cutoff >= Rational(0), "cutoff must be nonnegative"); }

nlohmann::json int_matrix_json(const IntMatrix& m) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& row : m) out.push_back(row);
    return out;
}

nlohmann::json lattice_json(const GramLattice& L) {
    return {{"rank", L.rank()},
            {"gram", int_matrix_json(L.gram())},
            {"det", L.determinant()},
            {"dual_quotient_size", dual_quotient(L).size()}};
}

std::vector<std::string> first_failures(const std::vector<std::string>& all) {
    return {all.begin(), all.begin() + static_cast<std::ptrdiff_t>(std::min(all.size(), kMaxListedFailures))};
}

// Per-weight comparison over the union of examined weights; `ok` is exact equality.
nlohmann::json compare_dims(const Subspace& a, const Subspace& b, const char* a_key, const char* b_key, bool& ok) {
    std::set<Rational> weights;
    for (const auto& [w, v] : a.blocks()) weights.insert(w);
    for (const auto& [w, v] : b.blocks()) weights.insert(w);
    nlohmann::json rows = nlohmann::json::array();
    ok = true;
    for (const auto& w : weights) {
        const bool eq = a.dim(w) == b.dim(w);
        ok = ok && eq;
        rows.push_back({{"weight", rational_string(w)}, {a_key, a.dim(w)}, {b_key, b.dim(w)}, {"equal", eq}});
    }
    return rows;
}

nlohmann::json integer_dims_json(const Subspace& s) { return s.integer_dims(); }

std::vector<StateVector> values_of(const std::vector<NamedElement>& es) {
    std::vector<StateVector> out;
    for (const auto& e : es) out.push_back(e.value);
    return out;
}

struct Candidate {
    NamedElement element;
    std::shared_ptr<const LatticeVoa> voa;
    Rational expected_c;
};

nlohmann::json virasoro_json(const Candidate& c, const RunOptions& opts, bool& ok) {
    const VirasoroReport r = virasoro_check(c.element.value, *c.voa, opts.check_weight, opts.max_states);
    const bool c_ok = r.central_charge && *r.central_charge == c.expected_c;
    ok = r.is_virasoro && c_ok;
    return {{"name", c.element.name},
            {"is_virasoro", r.is_virasoro},
            {"central_charge", r.central_charge ? rational_string(*r.central_charge) : "none"},
            {"expected_central_charge", rational_string(c.expected_c)},
            {"commutator_states", r.commutator_states},
            {"failures", first_failures(r.failures)},
            {"pass", ok}};
}

}  // namespace

std::string rational_string(const Rational& r) { return r.str(); }

nlohmann::json dims_json(const Subspace& s) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [w, d] : s.graded_dims()) out.push_back({{"weight", rational_string(w)}, {"dim", d}});
    return out;
}

Report cmd_lattice_info(int n, int l) {
    require(n >= 2 && l >= 2, "lattice-info needs n >= 2 and l >= 2");
    const GramLattice ambient = build_a_tensor(n, l, "a");
    const Sublattice k = sublattice_k(n, l, "a");
    const Sublattice nn = sublattice_n(n, l, "a");
    const Sublattice nt = sublattice_n(l, n, "b");
    bool orthogonal = true;
    for (const auto& u : k.embedding)
        for (const auto& v : nn.embedding) orthogonal = orthogonal && ambient.inner(u, v) == 0;
    const bool ranks = k.lattice.rank() + nn.lattice.rank() == ambient.rank();
    const bool dets = nn.lattice.determinant() == nt.lattice.determinant();
    nlohmann::json body{{"command", "lattice-info"},
                        {"parameters", {{"n", n}, {"l", l}}},
                        {"ambient", lattice_json(ambient)},
                        {"K", lattice_json(k.lattice)},
                        {"N", lattice_json(nn.lattice)},
                        {"N_tilde", lattice_json(nt.lattice)},
                        {"checks",
                         {{"K_orthogonal_to_N", orthogonal},
                          {"ranks_add_up", ranks},
                          {"N_and_N_tilde_same_det", dets}}},
                        {"pass", orthogonal && ranks && dets}};
    return {std::move(body)};
}

namespace {

// ('w^i)_m w^j for m = 0..3 inside the ambient algebra, classified without
// assuming any identification between the two families.
nlohmann::json prime_omega_products(const DualityMaps& maps, int n, int l, const std::vector<Candidate>& omegas) {
    const LatticeVoaMap embed = embedding_map(maps.n_voa);
    const LatticeVoa& voa = *maps.ambient;
    nlohmann::json out = nlohmann::json::array();
    for (int i = 1; i <= n - 1; ++i) {
        const StateVector pw = prime_omega(voa, i, n, l).value;
        for (int j = 1; j <= l - 1; ++j) {
            const StateVector w = push(embed, omegas[static_cast<std::size_t>(j - 1)].element.value);
            for (int m = 0; m <= 3; ++m) {
                const StateVector p = mode(pw, m, w, voa);
                nlohmann::json row{{"i", i}, {"j", j}, {"m", m}, {"zero", p.is_zero()}, {"terms", p.terms().size()}};
                if (p.is_zero()) {
                    out.push_back(std::move(row));
                    continue;
                }
                if (const auto c = proportionality(p, w)) row["multiple_of_omega_j"] = rational_string(*c);
                if (const auto c = proportionality(p, pw)) row["multiple_of_prime_omega_i"] = rational_string(*c);
                if (const auto c = proportionality(p, voa.vacuum())) row["multiple_of_vacuum"] = rational_string(*c);
                out.push_back(std::move(row));
            }
        }
    }
    return out;
}

}  // namespace

Report cmd_virasoro(int n, int l, const std::string& which, const RunOptions& opts) {
    require(n >= 2 && l >= 1, "virasoro needs n >= 2 and l >= 1");
    require(l >= 2 || which == "lattice" || which == "sugawara", "family '" + which + "' needs l >= 2");
    require(opts.check_weight >= 0, "check weight must be nonnegative");
    std::vector<Candidate> cands;
    const Rational c_l(2 * (l - 1), l + 2);
    const Rational c_n(2 * (n - 1), n + 2);
    nlohmann::json extra = nlohmann::json::object();
    bool extra_ok = true;
    if (which == "prime-omega") {
        auto voa = std::make_shared<const LatticeVoa>(build_a_tensor(n, l, "a"));
        for (int i = 1; i <= n - 1; ++i) cands.push_back({prime_omega(*voa, i, n, l), voa, c_l});
    } else if (which == "omega-tilde") {
        auto voa = std::make_shared<const LatticeVoa>(build_a_tensor(l, n, "b"));
        for (int i = 1; i <= l - 1; ++i) cands.push_back({tilde_generators(*voa, i, n, l).omega, voa, c_n});
    } else if (which == "omega") {
        const DualityMaps maps = build_duality_maps(n, l);
        for (int i = 1; i <= l - 1; ++i) cands.push_back({untilde_generators(maps, i).omega, maps.n_voa.voa, c_n});
        extra = prime_omega_products(maps, n, l, cands);
    } else if (which == "u") {
        require(l == 2, "u^{ii} is defined for l = 2");
        auto voa = std::make_shared<const LatticeVoa>(build_a_tensor(2, n, "b"));
        for (int i = 1; i <= n - 1; ++i) cands.push_back({u_ij(*voa, i, i, n), voa, Rational(1, 2)});
    } else if (which == "lattice" || which == "sugawara" || which == "coset") {
        auto voa = std::make_shared<const LatticeVoa>(build_a_tensor(n, l, "a"));
        const NamedElement full = lattice_conformal(*voa);
        const Rational rank(voa->rank());
        if (which == "lattice") {
            cands.push_back({full, voa, rank});
        } else {
            const CurrentAlgebra cur = diagonal_currents(*voa, n, l);
            const NamedElement sug = sugawara(*voa, cur.basis, l, n);
            const Rational c_sug(l * (n * n - 1), l + n);
            if (which == "sugawara") {
                cands.push_back({sug, voa, c_sug});
            } else {
                const NamedElement coset = coset_conformal(*voa, full, sug, cur.basis);
                cands.push_back({sug, voa, c_sug});
                cands.push_back({coset, voa, rank - c_sug});
                const BracketReport br = commuting_check(sug.value, coset.value, *voa, opts.check_weight, opts.max_states);
                extra_ok = br.ok;
                extra = {{"ok", br.ok}, {"states", br.states}, {"failures", first_failures(br.failures)}};
            }
        }
    } else {
        throw UsageError("unknown Virasoro family '" + which + "'");
    }
    nlohmann::json results = nlohmann::json::array();
    bool all = extra_ok;
    for (const auto& c : cands) {
        bool ok = false;
        results.push_back(virasoro_json(c, opts, ok));
        all = all && ok;
    }
    nlohmann::json body{{"command", "virasoro"},
                        {"parameters", {{"n", n}, {"l", l}, {"which", which}, {"check_weight", opts.check_weight}}},
                        {"candidates", results},
                        {"pass", all}};
    if (which == "coset") body["commuting"] = extra;
    if (which == "omega") body["prime_omega_products"] = extra;
    return {std::move(body)};
}

Report cmd_duality(int n, int l, const Rational& cutoff, const RunOptions& opts) {
    require(n >= 2 && l >= 2, "duality needs n >= 2 and l >= 2");
    require_cutoff(cutoff);
    const KernelOptions kopts{opts.max_states};
    const LatticeVoa a(build_a_tensor(n, l, "a"));
    const CurrentAlgebra da = diagonal_currents(a, n, l);
    std::vector<StateVector> gens = values_of(da.raising);
    for (const auto& f : da.lowering) gens.push_back(f.value);
    const Subspace coset = commutant_of_generators(a, gens, cutoff, kopts);

    const LatticeVoa b(build_a_tensor(l, n, "b"));
    const CurrentAlgebra db = diagonal_currents(b, l, n);
    std::vector<StateVector> bg = values_of(db.raising);
    for (const auto& f : db.lowering) bg.push_back(f.value);
    const Subspace affine = generated_subalgebra(b, bg, cutoff, nullptr, kopts);
    std::vector<ModeCondition> conds;
    for (const auto& h : db.cartan) conds.push_back({h.value, 0});
    const Subspace para = kernel_within(b, affine, conds);

    bool ok = false;
    nlohmann::json table = compare_dims(coset, para, "coset", "parafermion", ok);
    nlohmann::json body{{"command", "duality"},
                        {"parameters", {{"n", n}, {"l", l}, {"cutoff", rational_string(cutoff)}}},
                        {"coset_dims", integer_dims_json(coset)},
                        {"parafermion_dims", integer_dims_json(para)},
                        {"affine_dims", integer_dims_json(affine)},
                        {"per_weight", table},
                        {"pass", ok}};
    return {std::move(body)};
}

Report cmd_levi_duality(const Composition& comp, int n, const Rational& cutoff, const RunOptions& opts) {
    require(comp.total() >= 2 && n >= 2, "levi-duality needs |comp| >= 2 and n >= 2");
    require_cutoff(cutoff);
    const KernelOptions kopts{opts.max_states};
    const LeviRealization levi = levi_realization(comp, n);
    const RelativeParafermion rp = relative_parafermion(levi, cutoff, kopts);
    const TensorCoset tc = tensor_coset(comp, n, cutoff, kopts);
    bool ok = false;
    nlohmann::json table = compare_dims(tc.commutant, rp.commutant, "tensor_coset", "relative_parafermion", ok);
    nlohmann::json body{{"command", "levi-duality"},
                        {"parameters", {{"comp", comp.str()}, {"n", n}, {"cutoff", rational_string(cutoff)}}},
                        {"levi", {{"blocks", levi.blocks.size()}, {"center_coefficients", levi.center_coefficients}}},
                        {"tensor_algebra_dims", integer_dims_json(tc.tensor_algebra)},
                        {"affine_dims", integer_dims_json(rp.affine)},
                        {"tensor_coset_dims", integer_dims_json(tc.commutant)},
                        {"relative_parafermion_dims", integer_dims_json(rp.commutant)},
                        {"per_weight", table},
                        {"pass", ok}};
    return {std::move(body)};
}

Report cmd_map_check(int n, int l, const Rational& cutoff, bool corrupt, const RunOptions& opts) {
    require(n >= 2 && l >= 2, "map-check needs n >= 2 and l >= 2");
    require_cutoff(cutoff);
    const DualityMaps maps = build_duality_maps(n, l);
    const LatticeVoaMap tau = corrupt ? corrupt_signs(maps.tau) : maps.tau;
    const HomomorphismReport hom = verify_homomorphism(tau, cutoff, opts.sample_limit, opts.seed);

    const LatticeVoa& vn = *maps.n_voa.voa;
    const LatticeVoa& vt = *maps.n_tilde_voa.voa;
    nlohmann::json images = nlohmann::json::array();
    bool images_ok = true;
    std::vector<StateVector> w_gens;
    std::vector<StateVector> wt_gens;
    for (int i = 1; i <= l - 1; ++i) {
        const UntildeGenerators u = untilde_generators(maps, i);
        const TildeGenerators t = tilde_generators(*maps.ambient_tilde, i, n, l);
        const StateVector t_omega = restrict_to(maps.n_tilde_voa, t.omega.value);
        const StateVector t_w3 = restrict_to(maps.n_tilde_voa, t.w3.value);
        const bool om = push(tau, u.printed_omega.value) == t_omega;
        const bool w3 = push(tau, u.printed_w3.value) == t_w3;
        images_ok = images_ok && om && w3;
        images.push_back({{"i", i}, {"omega_maps_to_tilde", om}, {"w3_maps_to_tilde", w3},
                          {"printed_vs_pullback", u.comparison}});
        for (const auto* v : {&u.printed_omega.value, &u.printed_w3.value})
            if (!v->is_zero()) w_gens.push_back(*v);
        for (const auto* v : {&t_omega, &t_w3})
            if (!v->is_zero()) wt_gens.push_back(*v);
    }

    const KernelOptions kopts{opts.max_states};
    const Subspace w0 = generated_subalgebra(vn, w_gens, cutoff, nullptr, kopts);
    const Subspace wt0 = generated_subalgebra(vt, wt_gens, cutoff, nullptr, kopts);
    std::map<Rational, std::vector<StateVector>> pushed;
    for (const auto& [w, basis] : w0.blocks()) {
        auto& dst = pushed[w];
        for (const auto& v : basis) dst.push_back(push(tau, v));
    }
    const Subspace image(cutoff, pushed);
    bool dims_ok = false;
    nlohmann::json table = compare_dims(image, wt0, "tau_W0", "W0_tilde", dims_ok);
    std::set<Rational> weights;
    for (const auto& [w, v] : image.blocks()) weights.insert(w);
    for (const auto& [w, v] : wt0.blocks()) weights.insert(w);
    bool spans_equal = true;
    for (const auto& w : weights) spans_equal = spans_equal && image.basis(w) == wt0.basis(w);

    const bool pass = hom.ok && images_ok && dims_ok && spans_equal;
    nlohmann::json body{{"command", "map-check"},
                        {"parameters",
                         {{"n", n}, {"l", l}, {"cutoff", rational_string(cutoff)}, {"corrupt", corrupt},
                          {"seed", opts.seed}, {"sample_limit", opts.sample_limit}}},
                        {"homomorphism", to_json(hom)},
                        {"generator_images", images},
                        {"W0_dims", integer_dims_json(w0)},
                        {"W0_tilde_dims", integer_dims_json(wt0)},
                        {"per_weight", table},
                        {"W0_image_equals_W0_tilde", spans_equal},
                        {"pass", pass}};
    return {std::move(body)};
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

void flatten(const nlohmann::json& j, const std::string& path, std::ostringstream& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
    } else if (j.is_array()) {
        if (j.empty()) out << csv_field(path) << ",\n";
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
    } else {
        out << csv_field(path) << "," << csv_field(j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

}  // namespace

std::string to_csv(const nlohmann::json& report) {
    std::ostringstream out;
    out << "key,value\n";
    flatten(report, "", out);
    return out.str();
}

}  // namespace lvoa
