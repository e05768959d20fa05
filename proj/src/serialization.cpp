#include "hjdecay/serialization.hpp"

#include <fstream>
#include <sstream>

namespace hjd {
namespace {

Json vec_to_json(const Vec& v)
{
    Json a = Json::array();
    for (double x : v) a.push_back(x);
    return a;
}

Vec vec_from_json(const Json& j)
{
    Vec v;
    for (const auto& x : j) v.push_back(x.get<double>());
    return v;
}

Json axes_to_json(const GridN& g)
{
    Json a = Json::array();
    for (const auto& ax : g.axes)
        a.push_back({{"lo", ax.lo}, {"hi", ax.hi}, {"count", ax.count}});
    return a;
}

GridN axes_from_json(const Json& j)
{
    GridN g;
    for (const auto& ax : j)
        g.axes.push_back({ax.at("lo").get<double>(), ax.at("hi").get<double>(),
                          ax.at("count").get<std::size_t>()});
    return g;
}

} // namespace

Json hamiltonian_to_json(const Hamiltonian& H)
{
    Json j;
    j["variant"] = H.kind_name();
    j["dim"] = H.dim();
    Json& p = j["params"];
    if (H.is_quadratic()) {
        const Mat& Q = H.as_quadratic().Q;
        Json rows = Json::array();
        for (std::size_t i = 0; i < Q.rows; ++i) {
            Json row = Json::array();
            for (std::size_t k = 0; k < Q.cols; ++k) row.push_back(Q(i, k));
            rows.push_back(row);
        }
        p["matrix"] = rows;
    } else if (H.is_max_affine()) {
        Json pieces = Json::array();
        for (const auto& pc : H.as_max_affine().pieces)
            pieces.push_back({{"slope", vec_to_json(pc.slope)}, {"offset", pc.offset}});
        p["pieces"] = pieces;
    } else if (H.is_abs_linear()) {
        p["direction"] = vec_to_json(H.as_abs_linear().direction);
    } else if (H.is_sum()) {
        Json terms = Json::array();
        for (const auto& t : H.as_sum().terms) terms.push_back(hamiltonian_to_json(t));
        p["terms"] = terms;
    } else {
        const SampledConvex& s = H.as_sampled().table;
        p["grid"] = axes_to_json(s.grid);
        p["values"] = s.values;
        if (!s.mask.empty()) p["mask"] = s.mask;
    }
    return j;
}

Hamiltonian hamiltonian_from_json(const Json& j)
{
    const std::string variant = j.at("variant").get<std::string>();
    const std::size_t dim = j.at("dim").get<std::size_t>();
    const Json& p = j.at("params");
    if (variant == "quadratic") {
        const Json& rows = p.at("matrix");
        Mat Q(rows.size(), rows.empty() ? 0 : rows[0].size());
        for (std::size_t i = 0; i < Q.rows; ++i)
            for (std::size_t k = 0; k < Q.cols; ++k) Q(i, k) = rows[i][k].get<double>();
        if (Q.rows != dim) throw invalid_input("hamiltonian json: matrix size != dim");
        return Hamiltonian::quadratic(std::move(Q));
    }
    if (variant == "max_affine") {
        std::vector<AffinePiece> pieces;
        for (const auto& pc : p.at("pieces"))
            pieces.push_back({vec_from_json(pc.at("slope")), pc.at("offset").get<double>()});
        Hamiltonian h = Hamiltonian::max_affine(std::move(pieces));
        if (h.dim() != dim) throw invalid_input("hamiltonian json: slope size != dim");
        return h;
    }
    if (variant == "abs_linear") {
        Hamiltonian h = Hamiltonian::abs_linear(vec_from_json(p.at("direction")));
        if (h.dim() != dim) throw invalid_input("hamiltonian json: direction size != dim");
        return h;
    }
    if (variant == "sum") {
        std::vector<Hamiltonian> terms;
        for (const auto& t : p.at("terms")) terms.push_back(hamiltonian_from_json(t));
        return Hamiltonian::sum(std::move(terms));
    }
    if (variant == "sampled") {
        SampledConvex s;
        s.grid = axes_from_json(p.at("grid"));
        s.values = p.at("values").get<std::vector<double>>();
        if (p.contains("mask")) s.mask = p.at("mask").get<std::vector<std::uint8_t>>();
        return Hamiltonian::sampled(std::move(s));
    }
    throw invalid_input("hamiltonian json: unknown variant \"" + variant + "\"");
}

Json trigpoly_to_json(const TrigPolynomial& u)
{
    Json j;
    j["dim"] = u.dim();
    Json gens = Json::array();
    for (const auto& name : u.generator_basis()->names()) gens.push_back(name);
    j["base_generators"] = gens;
    Json terms = Json::array();
    for (const auto& [f, a] : u.terms()) {
        Json freq = Json::array();
        for (const auto& r : f.raw()) freq.push_back({r.num(), r.den()});
        terms.push_back({{"freq", freq}, {"re", a.real()}, {"im", a.imag()}});
    }
    j["terms"] = terms;
    return j;
}

TrigPolynomial trigpoly_from_json(const Json& j)
{
    const std::size_t dim = j.at("dim").get<std::size_t>();
    std::vector<std::string> names;
    for (const auto& g : j.at("base_generators")) names.push_back(g.get<std::string>());
    auto basis = GeneratorBasis::make(std::move(names));

    std::vector<std::pair<FrequencyVector, TrigPolynomial::Coeff>> terms;
    for (const auto& t : j.at("terms")) {
        const Json& freq = t.at("freq");
        if (freq.size() != dim * basis->size())
            throw invalid_input("trig polynomial json: freq length must be dim*generators");
        std::vector<Rational> coeffs;
        for (const auto& pair : freq)
            coeffs.emplace_back(pair.at(0).get<std::int64_t>(), pair.at(1).get<std::int64_t>());
        FrequencyVector f(basis, dim, std::move(coeffs));
        terms.emplace_back(std::move(f), TrigPolynomial::Coeff(t.at("re").get<double>(),
                                                               t.at("im").get<double>()));
    }
    return TrigPolynomial::from_terms(dim, basis, std::move(terms));
}

void write_sampled(const SampledConvex& s, const std::filesystem::path& header_path)
{
    const std::filesystem::path csv_path = header_path.parent_path() /
                                           (header_path.stem().string() + ".csv");
    Json h;
    h["dim"] = s.dim();
    h["grid"] = axes_to_json(s.grid);
    h["payload"] = csv_path.filename().string();
    write_json_file(header_path, h);

    std::string csv;
    for (std::size_t d = 0; d < s.dim(); ++d) csv += "i" + std::to_string(d) + ",";
    csv += "value\n";
    for (std::size_t flat = 0; flat < s.size(); ++flat) {
        const auto idx = s.grid.unflatten(flat);
        for (auto i : idx) csv += std::to_string(i) + ",";
        csv += s.finite_at(flat) ? format_double(s.values[flat]) : "inf";
        csv += "\n";
    }
    write_text_file(csv_path, csv);
}

SampledConvex read_sampled(const std::filesystem::path& header_path)
{
    const Json h = read_json_file(header_path);
    SampledConvex s;
    s.grid = axes_from_json(h.at("grid"));
    const std::filesystem::path csv_path =
        header_path.parent_path() / h.at("payload").get<std::string>();
    std::ifstream in(csv_path);
    if (!in) throw invalid_input("cannot open payload " + csv_path.string());
    std::string line;
    std::getline(in, line); // header
    s.values.assign(s.grid.size(), 0.0);
    std::vector<std::uint8_t> mask(s.grid.size(), 1);
    bool any_masked = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::size_t> idx;
        for (std::size_t d = 0; d < s.dim(); ++d) {
            std::getline(ss, cell, ',');
            idx.push_back(std::stoul(cell));
        }
        std::getline(ss, cell, ',');
        const std::size_t flat = s.grid.flatten(idx);
        if (cell == "inf") {
            mask[flat] = 0;
            any_masked = true;
        } else {
            s.values[flat] = std::stod(cell);
        }
    }
    if (any_masked) s.mask = std::move(mask);
    s.validate();
    return s;
}

Json nd_report_to_json(const NDReport& r)
{
    Json j;
    j["verdict"] = r.satisfied_up_to_bound ? "satisfied_up_to_bound" : "violated";
    j["bound_K"] = r.bound_K;
    j["delta"] = r.delta;
    j["segment_grid"] = r.grid_count;
    Json ws = Json::array();
    for (const auto& w : r.witnesses) {
        Json wj;
        wj["k"] = w.k;
        wj["xi"] = vec_to_json(w.xi);
        wj["xi_exact"] = w.xi_exact.str();
        wj["alpha"] = w.alpha;
        wj["delta"] = w.delta;
        ws.push_back(wj);
    }
    j["witnesses"] = ws;
    return j;
}

Json certificate_to_json(const DecayCertificate& c)
{
    Json j;
    j["epsilon"] = c.epsilon;
    j["p0"] = vec_to_json(c.p0);
    Json verts = Json::array();
    for (const auto& v : c.subdiff_polytope.vertices()) verts.push_back(vec_to_json(v));
    j["subdiff_vertices"] = verts;
    j["delta_net"] = c.delta_net;
    Json net = Json::array();
    for (std::size_t i = 0; i < c.net_q.size(); ++i)
        net.push_back({{"q", vec_to_json(c.net_q[i])},
                       {"projected", vec_to_json(c.net_projected[i])}});
    j["net"] = net;
    Json table = Json::array();
    // partial certificates (budget exhaustion) carry no alpha entries
    const std::size_t rows = std::min(c.t_table.size(),
                                      std::min(c.alpha_table.size(), c.bound_table.size()));
    for (std::size_t i = 0; i < rows; ++i)
        table.push_back({{"t", c.t_table[i]},
                         {"alpha", c.alpha_table[i]},
                         {"bound", c.bound_table[i]}});
    j["alpha_table"] = table;
    j["c"] = c.c;
    j["shells_scanned"] = c.shells_scanned;
    return j;
}

Json certificate_result_to_json(const CertificateResult& r)
{
    Json j;
    j["status"] = r.ok() ? "ok" : "budget_exhausted";
    j["message"] = r.message;
    j["certificate"] = certificate_to_json(r.certificate);
    if (!r.ok()) j["nd_recheck"] = nd_report_to_json(r.nd_recheck);
    return j;
}

void write_field_csv(const SolutionField& f, const std::filesystem::path& csv_path)
{
    std::string csv;
    for (std::size_t d = 0; d < f.dim(); ++d) csv += "x" + std::to_string(d) + ",";
    csv += "value\n";
    for (std::size_t flat = 0; flat < f.count(); ++flat) {
        const Vec x = f.point(flat);
        for (double xi : x) csv += format_double(xi) + ",";
        csv += format_double(f.values[flat]) + "\n";
    }
    write_text_file(csv_path, csv);
}

Json field_sidecar_json(const SolutionField& f, const Json& tolerances)
{
    Json j;
    j["t"] = f.t;
    j["provenance"] = provenance_name(f.provenance);
    j["periodic"] = f.periodic;
    if (f.periodic)
        j["torus_res"] = f.torus_res;
    else
        j["grid"] = axes_to_json(f.grid);
    j["tolerances"] = tolerances;
    return j;
}

void write_text_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw invalid_input("cannot write " + path.string());
    out << content;
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw invalid_input("cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_json_file(const std::filesystem::path& path, const Json& j)
{
    write_text_file(path, j.dump(2) + "\n");
}

Json read_json_file(const std::filesystem::path& path)
{
    return Json::parse(read_text_file(path));
}

} // namespace hjd
