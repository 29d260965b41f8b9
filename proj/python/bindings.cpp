#include "volcp/cluster.hpp"
#include "volcp/error.hpp"
#include "volcp/filter.hpp"
#include "volcp/filter_io.hpp"
#include "volcp/ingest.hpp"
#include "volcp/metric.hpp"
#include "volcp/synth.hpp"

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

namespace py = pybind11;
using namespace volcp;

namespace {

ParamTarget parse_target(const std::string& name) {
    if (name == "mu") return ParamTarget::mu;
    if (name == "alpha") return ParamTarget::alpha;
    if (name == "log_sigma") return ParamTarget::log_sigma;
    throw InputError("target must be 'mu', 'alpha' or 'log_sigma', got '" + name + "'");
}

py::tuple pmf_tuple(const SparsePmf& p) {
    py::array_t<std::int64_t> s(static_cast<py::ssize_t>(p.size()), p.support().data());
    py::array_t<double> w(static_cast<py::ssize_t>(p.size()), p.probs().data());
    return py::make_tuple(s, w);
}

DissimilarityMatrix to_matrix(std::vector<std::string> labels, const Eigen::MatrixXd& values) {
    if (values.rows() != values.cols() || static_cast<std::size_t>(values.rows()) != labels.size()) {
        throw InputError("dissimilarity matrix must be square with one label per row");
    }
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(values.size()));
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
        for (Eigen::Index j = 0; j < values.cols(); ++j) flat.push_back(values(i, j));
    }
    return DissimilarityMatrix(std::move(labels), std::move(flat));
}

}  // namespace

PYBIND11_MODULE(_volcp, m) {
    m.doc() = "Bayesian volatility change-point filter, W1 dissimilarities and average-linkage clustering.";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

    py::class_<Hyperparams>(m, "Hyperparams")
        .def(py::init([](double a, double b, double delta0, double delta1, bool include_mu) {
                 Hyperparams h{a, b, delta0, delta1, include_mu};
                 h.validate();
                 return h;
             }),
             py::arg("a") = 5e-4, py::arg("b") = 5e-4, py::arg("delta0") = 10.0, py::arg("delta1") = 0.02,
             py::arg("include_mu") = true)
        .def_readwrite("a", &Hyperparams::a)
        .def_readwrite("b", &Hyperparams::b)
        .def_readwrite("delta0", &Hyperparams::delta0)
        .def_readwrite("delta1", &Hyperparams::delta1)
        .def_readwrite("include_mu", &Hyperparams::include_mu);

    py::class_<HazardModel>(m, "HazardModel")
        .def_static("geometric", &HazardModel::geometric, py::arg("p"))
        .def_static("tabulated", &HazardModel::tabulated, py::arg("cdf"))
        .def_property_readonly("is_geometric", &HazardModel::is_geometric)
        .def("cdf", &HazardModel::cdf, py::arg("k"))
        .def("hazard", &HazardModel::hazard, py::arg("gap"));

    py::class_<StudentT>(m, "StudentT")
        .def(py::init<double, double, double>(), py::arg("dof"), py::arg("loc"), py::arg("scale_sq"))
        .def_readonly("dof", &StudentT::dof)
        .def_readonly("loc", &StudentT::loc)
        .def_readonly("scale_sq", &StudentT::scale_sq)
        .def("logpdf", &StudentT::logpdf)
        .def("pdf", &StudentT::pdf)
        .def("cdf", &StudentT::cdf)
        .def("quantile", &StudentT::quantile)
        .def("__repr__", [](const StudentT& t) {
            return "StudentT(dof=" + std::to_string(t.dof) + ", loc=" + std::to_string(t.loc) +
                   ", scale_sq=" + std::to_string(t.scale_sq) + ")";
        });

    py::class_<InverseGamma>(m, "InverseGamma")
        .def(py::init<double, double>(), py::arg("shape"), py::arg("scale"))
        .def_readonly("shape", &InverseGamma::shape)
        .def_readonly("scale", &InverseGamma::scale)
        .def("mode", &InverseGamma::mode)
        .def("logpdf", &InverseGamma::logpdf)
        .def("cdf", &InverseGamma::cdf)
        .def("quantile", &InverseGamma::quantile);

    py::class_<StudentTMixture>(m, "StudentTMixture")
        .def_readonly("weights", &StudentTMixture::weights)
        .def_readonly("components", &StudentTMixture::components)
        .def("pdf", &StudentTMixture::pdf)
        .def("cdf", &StudentTMixture::cdf)
        .def("quantile", &StudentTMixture::quantile);

    py::class_<FilterConfig>(m, "FilterConfig")
        .def(py::init([](const Hyperparams& hyper, const HazardModel& hazard, std::size_t max_support) {
                 return FilterConfig{hyper, hazard, max_support};
             }),
             py::arg("hyper") = Hyperparams{}, py::arg("hazard") = HazardModel::geometric(0.02),
             py::arg("max_support") = 100)
        .def_readwrite("hyper", &FilterConfig::hyper)
        .def_readwrite("hazard", &FilterConfig::hazard)
        .def_readwrite("max_support", &FilterConfig::max_support);

    py::class_<ChangepointFilter>(m, "ChangepointFilter")
        .def(py::init<FilterConfig, double>(), py::arg("config"), py::arg("y0"))
        .def("step", &ChangepointFilter::step, py::arg("y"))
        .def(
            "run",
            [](ChangepointFilter& f, const std::vector<double>& ys) {
                std::vector<std::int64_t> trace;
                trace.reserve(ys.size());
                for (double y : ys) {
                    f.step(y);
                    trace.push_back(f.map_changepoint());
                }
                return py::array_t<std::int64_t>(static_cast<py::ssize_t>(trace.size()), trace.data());
            },
            py::arg("ys"), "Step through ys and return the MAP change-point after each step.")
        .def_property_readonly("t", &ChangepointFilter::t)
        .def_property_readonly("last_y", &ChangepointFilter::last_y)
        .def("posterior", [](const ChangepointFilter& f) { return pmf_tuple(f.posterior()); },
             "(support, probabilities) of the most recent change-point.")
        .def("map_changepoint", &ChangepointFilter::map_changepoint)
        .def(
            "param_summary",
            [](const ChangepointFilter& f, const std::string& target, double level) {
                const auto s = f.param_summary(parse_target(target), level);
                return py::make_tuple(s.point, s.lo, s.hi);
            },
            py::arg("target"), py::arg("level") = 0.95)
        .def("map_predictive", &ChangepointFilter::map_predictive)
        .def("predictive_mixture", &ChangepointFilter::predictive_mixture)
        .def("to_json", [](const ChangepointFilter& f) { return to_json(f).dump(); })
        .def_static("from_json", [](const std::string& text) { return filter_from_json(nlohmann::json::parse(text)); });

    py::class_<SparsePmf>(m, "SparsePmf")
        .def(py::init<std::vector<std::int64_t>, std::vector<double>>(), py::arg("support"), py::arg("probs"))
        .def_static("dirac", &SparsePmf::dirac)
        .def_property_readonly("support", [](const SparsePmf& p) { return py::cast(std::vector<std::int64_t>(p.support().begin(), p.support().end())); })
        .def_property_readonly("probs", [](const SparsePmf& p) { return py::cast(std::vector<double>(p.probs().begin(), p.probs().end())); })
        .def("cdf", &SparsePmf::cdf);

    m.def("w1", &w1, py::arg("p"), py::arg("q"), "Wasserstein-1 distance between two change-point posteriors.");

    m.def(
        "pairwise",
        [](const std::vector<std::pair<std::string, SparsePmf>>& pmfs, unsigned threads) {
            const auto d = pairwise(pmfs, threads);
            const auto n = static_cast<Eigen::Index>(d.size());
            Eigen::MatrixXd out(n, n);
            for (Eigen::Index i = 0; i < n; ++i) {
                for (Eigen::Index j = 0; j < n; ++j) out(i, j) = d(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            }
            return py::make_tuple(d.labels(), out);
        },
        py::arg("pmfs"), py::arg("threads") = 1, "(labels, matrix) of pairwise W1 distances.");

    py::class_<Merge>(m, "Merge")
        .def_readonly("left", &Merge::left)
        .def_readonly("right", &Merge::right)
        .def_readonly("height", &Merge::height)
        .def_readonly("size", &Merge::size)
        .def("__repr__", [](const Merge& g) {
            return "Merge(" + std::to_string(g.left) + ", " + std::to_string(g.right) + ", " +
                   std::to_string(g.height) + ", " + std::to_string(g.size) + ")";
        });

    py::class_<Dendrogram>(m, "Dendrogram")
        .def_readonly("m", &Dendrogram::m)
        .def_readonly("merges", &Dendrogram::merges)
        .def("cut", &cut, py::arg("k"))
        .def("leaf_order", &leaf_order)
        .def("to_json", [](const Dendrogram& d) { return to_json(d).dump(); });

    m.def(
        "average_linkage",
        [](std::vector<std::string> labels, const Eigen::MatrixXd& values) {
            return average_linkage(to_matrix(std::move(labels), values));
        },
        py::arg("labels"), py::arg("matrix"));

    m.def(
        "log_returns",
        [](const Eigen::MatrixXd& prices) {
            PriceTable table;
            for (Eigen::Index r = 0; r < prices.rows(); ++r) table.dates.push_back("row " + std::to_string(r));
            for (Eigen::Index c = 0; c < prices.cols(); ++c) table.tickers.push_back("column " + std::to_string(c));
            table.prices = prices;
            return log_returns(table).returns;
        },
        py::arg("prices"), "Log-returns of a (dates x series) price array; one row fewer than the input.");

    m.def(
        "read_returns",
        [](const std::string& path, const std::string& missing) {
            const auto loaded = read_returns(path, parse_missing_policy(missing));
            return py::make_tuple(loaded.table.dates, loaded.table.tickers, loaded.table.returns);
        },
        py::arg("path"), py::arg("missing") = "error", "(dates, tickers, returns) from a returns CSV.");

    m.def(
        "simulate",
        [](std::int64_t length, const HazardModel& hazard, py::object params, double y0, std::uint64_t seed) {
            SynthSpec spec;
            spec.length = length;
            spec.hazard = hazard;
            spec.y0 = y0;
            spec.seed = seed;
            if (py::isinstance<Hyperparams>(params)) {
                spec.params = params.cast<Hyperparams>();
            } else {
                std::vector<SegmentParams> segs;
                for (const auto& row : params.cast<std::vector<std::tuple<double, double, double>>>()) {
                    segs.push_back({std::get<0>(row), std::get<1>(row), std::get<2>(row)});
                }
                spec.params = segs;
            }
            const auto path = generate(spec);
            std::vector<std::tuple<double, double, double>> segs;
            for (const auto& s : path.segments) segs.emplace_back(s.mu, s.alpha, s.sigma);
            py::dict out;
            out["y"] = py::array_t<double>(static_cast<py::ssize_t>(path.y.size()), path.y.data());
            out["changepoints"] = path.changepoints;
            out["segments"] = segs;
            return out;
        },
        py::arg("length"), py::arg("hazard"), py::arg("params"), py::arg("y0") = 0.0, py::arg("seed") = 0,
        "Synthetic path: params is a Hyperparams prior or a list of (mu, alpha, sigma) per segment.");
}
