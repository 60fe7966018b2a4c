#include "fusionkz/serialize.hpp"

#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

namespace fusionkz {

Json to_json(const Rational &q) { return to_string(q); }

Json to_json(const Real &x) { return x.to_string(); }

Json to_json(const RMatrix &m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(to_string(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const XMatrix &m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j).to_string());
        rows.push_back(std::move(row));
    }
    return rows;
}

Json weight_json(const Weight &w) { return Json(w); }

Rational rational_from_json(const Json &j) {
    if (j.is_number_integer())
        return Rational(j.get<long>());
    if (!j.is_string())
        throw DomainError("expected a rational string, got " + j.dump());
    return parse_rational(j.get<std::string>());
}

RMatrix rational_matrix_from_json(const Json &j) {
    if (!j.is_array())
        throw DomainError("expected a matrix");
    const std::size_t rows = j.size();
    const std::size_t cols = rows ? j[0].size() : 0;
    RMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw DimensionError("ragged matrix rows");
        for (std::size_t k = 0; k < cols; ++k)
            m(i, k) = rational_from_json(j[i][k]);
    }
    return m;
}

namespace {

Json matrices(const std::vector<RMatrix> &ms) {
    Json out = Json::array();
    for (const auto &m : ms)
        out.push_back(to_json(m));
    return out;
}

std::vector<RMatrix> matrices_from_json(const Json &j) {
    std::vector<RMatrix> out;
    for (const auto &m : j)
        out.push_back(rational_matrix_from_json(m));
    return out;
}

Json vectors(const std::vector<RVector> &vs) {
    Json out = Json::array();
    for (const auto &v : vs) {
        Json row = Json::array();
        for (const auto &x : v)
            row.push_back(to_string(x));
        out.push_back(std::move(row));
    }
    return out;
}

std::string map_cell(const std::map<Weight, std::size_t> &cell) {
    std::string out;
    for (const auto &[nu, mult] : cell) {
        if (!out.empty())
            out += ',';
        out += weight_label(nu) + ":" + std::to_string(mult);
    }
    return out;
}

} // namespace

Json to_json(const RootDatum &d) {
    Json j;
    j["series"] = d.series;
    j["rank"] = d.rank;
    Json cartan = Json::array();
    for (std::size_t i = 0; i < d.rank; ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < d.rank; ++k)
            row.push_back(d.cartan(i, k));
        cartan.push_back(std::move(row));
    }
    j["cartan"] = std::move(cartan);
    j["gram"] = to_json(d.gram);
    j["theta"] = d.theta;
    j["rho"] = d.rho;
    j["h_dual"] = d.h_dual;
    j["trace_scale"] = to_string(d.trace_scale);
    j["basis"] = matrices(d.algebra_basis);
    j["dual_basis"] = matrices(d.dual_basis);
    j["e_index"] = d.e_index;
    j["f_index"] = d.f_index;
    j["h_index"] = d.h_index;
    j["x_theta"] = d.x_theta;
    return j;
}

RootDatumPtr root_datum_from_json(const Json &j) {
    try {
        RootDatum d;
        d.series = j.at("series").get<std::string>();
        d.rank = j.at("rank").get<std::size_t>();
        d.cartan = Matrix<long>(d.rank, d.rank);
        const auto &cartan = j.at("cartan");
        if (cartan.size() != d.rank)
            throw DimensionError("cartan matrix size differs from rank");
        for (std::size_t i = 0; i < d.rank; ++i) {
            if (cartan[i].size() != d.rank)
                throw DimensionError("cartan matrix size differs from rank");
            for (std::size_t k = 0; k < d.rank; ++k)
                d.cartan(i, k) = cartan[i][k].get<long>();
        }
        d.gram = rational_matrix_from_json(j.at("gram"));
        if (d.gram.rows() != d.rank || d.gram.cols() != d.rank)
            throw DimensionError("gram matrix size differs from rank");
        d.theta = j.at("theta").get<Weight>();
        d.rho = j.at("rho").get<Weight>();
        d.h_dual = j.at("h_dual").get<long>();
        d.trace_scale = rational_from_json(j.at("trace_scale"));
        d.algebra_basis = matrices_from_json(j.at("basis"));
        d.dual_basis = matrices_from_json(j.at("dual_basis"));
        d.e_index = j.at("e_index").get<std::vector<std::size_t>>();
        d.f_index = j.at("f_index").get<std::vector<std::size_t>>();
        d.h_index = j.at("h_index").get<std::vector<std::size_t>>();
        d.x_theta = j.at("x_theta").get<std::size_t>();
        const std::size_t dim = d.algebra_basis.size();
        for (const auto *idx : {&d.e_index, &d.f_index, &d.h_index})
            if (idx->size() != d.rank ||
                std::any_of(idx->begin(), idx->end(), [&](std::size_t a) { return a >= dim; }))
                throw DimensionError("generator indices do not match the basis");
        if (d.x_theta >= dim || d.theta.size() != d.rank || d.rho.size() != d.rank)
            throw DimensionError("inconsistent highest root data");
        finalize_root_datum(d);
        return std::make_shared<const RootDatum>(std::move(d));
    } catch (const Json::exception &e) {
        throw DomainError(std::string("malformed algebra data: ") + e.what());
    }
}

Json to_json(const GModule &m) {
    Json j;
    j["algebra"] = m.datum->label();
    j["dim"] = m.dim;
    j["weights"] = m.weights;
    j["action"] = matrices(m.action);
    j["provenance"] = m.provenance;
    return j;
}

GModule module_from_json(const Json &j, const RootDatumPtr &datum) {
    try {
        GModule m;
        m.datum = datum;
        m.dim = j.at("dim").get<std::size_t>();
        m.weights = j.at("weights").get<std::vector<Weight>>();
        m.action = matrices_from_json(j.at("action"));
        m.provenance = j.value("provenance", std::string("file"));
        if (m.weights.size() != m.dim || m.action.size() != datum->dim())
            throw DimensionError("module data does not match the algebra");
        for (const auto &a : m.action)
            if (a.rows() != m.dim || a.cols() != m.dim)
                throw DimensionError("action matrix has the wrong size");
        if (!satisfies_brackets(m))
            throw InternalInvariantViolation("module data violates the bracket relations");
        return m;
    } catch (const Json::exception &e) {
        throw DomainError(std::string("malformed module data: ") + e.what());
    }
}

Json to_json(const SubspaceBasis &s) {
    Json j;
    j["ambient_dim"] = s.ambient_dim;
    j["dim"] = s.dim();
    j["basis"] = vectors(s.vectors);
    j["pivots"] = s.pivots;
    j["complement"] = s.complement;
    return j;
}

Json to_json(const FusionProduct &fp) {
    Json j;
    j["level"] = fp.level;
    j["first"] = fp.first ? fp.first->provenance : std::string();
    j["second"] = fp.second ? fp.second->provenance : std::string();
    j["tensor_dim"] = fp.tensor.dim;
    j["kernel"] = to_json(fp.kernel);
    j["result"] = to_json(fp.result);
    j["projection"] = to_json(fp.projection);
    Json dec = Json::object();
    for (const auto &[nu, mult] : decompose(fp.result))
        dec[weight_label(nu)] = mult;
    j["decomposition"] = std::move(dec);
    return j;
}

Json to_json(const FusionTable &t) {
    Json j;
    j["level"] = t.level;
    Json labels = Json::array();
    for (const auto &w : t.weights)
        labels.push_back(weight_label(w));
    j["weights"] = std::move(labels);
    Json rows = Json::array();
    for (const auto &row : t.entries) {
        Json r = Json::array();
        for (const auto &cell : row) {
            Json c = Json::object();
            for (const auto &[nu, mult] : cell)
                c[weight_label(nu)] = mult;
            r.push_back(std::move(c));
        }
        rows.push_back(std::move(r));
    }
    j["entries"] = std::move(rows);
    return j;
}

std::string fusion_table_csv(const FusionTable &t) {
    std::ostringstream out;
    out << "lambda";
    for (const auto &w : t.weights)
        out << ',' << weight_label(w);
    out << '\n';
    for (std::size_t i = 0; i < t.weights.size(); ++i) {
        out << weight_label(t.weights[i]);
        for (std::size_t k = 0; k < t.weights.size(); ++k)
            out << ",\"" << map_cell(t.entries[i][k]) << '"';
        out << '\n';
    }
    return out.str();
}

Json to_json(const AssociatorMatrix &a) {
    Json j;
    j["z0"] = to_string(a.z0);
    j["M"] = a.order;
    j["orders_tried"] = a.orders_tried;
    j["precision_bits"] = a.bits;
    j["dim"] = a.phi.rows();
    j["tail_bound"] = to_json(a.tail_bound);
    j["residuals"] = {{"defining_relation", to_json(a.defining_residual)},
                      {"tail_zero", to_json(a.tail_zero)},
                      {"tail_one", to_json(a.tail_one)}};
    j["condition"] = to_json(a.condition);
    j["phi"] = to_json(a.phi);
    j["phi_adjoint"] = to_json(a.phi_adjoint);
    if (a.omega) {
        j["modules"] = {a.omega->u1->provenance, a.omega->u2->provenance,
                        a.omega->u3->provenance};
        j["level"] = a.omega->level;
        j["kappa"] = to_string(a.omega->kappa);
        Json spec = Json::object();
        for (const auto &[name, s] : {std::pair{"A", &a.omega->kz.spec_a},
                                      std::pair{"B", &a.omega->kz.spec_b}}) {
            Json classes = Json::array();
            for (const auto &c : s->classes)
                classes.push_back({{"base", to_string(c.base)}, {"offsets", c.offsets}});
            spec[name] = std::move(classes);
        }
        j["eigen_classes"] = std::move(spec);
    }
    return j;
}

Json to_json(const QuotientReport &r) {
    Json j;
    j["tensor_dim"] = r.tensor_dim;
    j["source_kernel_dim"] = r.source_kernel_dim;
    j["target_kernel_dim"] = r.target_kernel_dim;
    j["quotient_dim"] = r.quotient_dim;
    j["transport_residual"] = to_json(r.transport_residual);
    j["phi_equivariance_residual"] = to_json(r.phi_equivariance_residual);
    j["equivariance_residual"] = to_json(r.equivariance_residual);
    j["pivot_ratio"] = to_json(r.pivot_ratio);
    j["condition"] = to_json(r.condition);
    j["tolerance"] = to_json(r.tolerance);
    j["dims_equal"] = r.dims_equal;
    j["transport_ok"] = r.transport_ok;
    j["equivariant"] = r.equivariant;
    j["invertible"] = r.invertible;
    j["passed"] = r.passed();
    return j;
}

Json to_json(const QuotientAssociator &q) {
    Json j;
    j["associator"] = to_json(q.assoc);
    j["report"] = to_json(q.report);
    j["source_kernel"] = to_json(q.source_kernel);
    j["target_kernel"] = to_json(q.target_kernel);
    j["induced_matrix"] = to_json(q.matrix);
    return j;
}

Json to_json(const PentagonReport &r) {
    static const char *brackets[] = {"1(2(34))", "(12)(34)", "((12)3)4", "(1(23))4",
                                     "1((23)4)"};
    static const char *maps[] = {"A_1,2,34", "A_12,3,4", "id*A_2,3,4", "A_1,23,4",
                                 "A_1,2,3*id"};
    Json j;
    j["level"] = r.level;
    j["tensor_dim"] = r.tensor_dim;
    Json dims = Json::object();
    for (std::size_t k = 0; k < 5; ++k)
        dims[brackets[k]] = r.quotient_dims[k];
    j["quotient_dims"] = std::move(dims);
    Json lifts = Json::object();
    for (std::size_t k = 0; k < 5; ++k)
        lifts[maps[k]] = {{"transport_residual", to_json(r.transport[k])},
                          {"associator", to_json(r.associators[k])}};
    j["maps"] = std::move(lifts);
    j["residual"] = to_json(r.residual);
    j["tolerance"] = to_json(r.tolerance);
    j["passed"] = r.passed();
    return j;
}

Json to_json(const Check &c) {
    return {{"name", c.name},
            {"residual", to_json(c.residual)},
            {"tolerance", to_json(c.tolerance)},
            {"passed", c.passed},
            {"detail", c.detail}};
}

Json to_json(const SuiteReport &r) {
    Json checks = Json::array();
    for (const auto &c : r.checks)
        checks.push_back(to_json(c));
    return {{"suite", r.suite}, {"checks", std::move(checks)}, {"passed", r.passed()}};
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

void write_atomic(const std::filesystem::path &path, const std::string &content) {
    namespace fs = std::filesystem;
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    fs::path tmp = dir / ("." + path.filename().string() + ".tmp" + std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw std::runtime_error("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw std::runtime_error("cannot move output into " + path.string());
    }
}

} // namespace fusionkz
