#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gowerk/euclidesation.hpp"
#include "gowerk/kkmeans.hpp"
#include "gowerk/repro.hpp"
#include "gowerk/transforms.hpp"

namespace py = pybind11;
using namespace gowerk;

namespace {

PyObject* g_error_type = nullptr;

DissimilarityMatrix to_dissimilarity(const Matrix& d) {
  return validate_dissimilarity(SquareMatrix::from(d));
}

KernelMatrix to_kernel(const Matrix& k) { return KernelMatrix::from(k); }

py::dict clustering_dict(const Clustering& c) {
  py::dict out;
  out["assignments"] = c.assignments;
  out["k"] = c.k;
  out["cost"] = c.cost;
  out["iterations"] = c.iterations;
  out["restarts_used"] = c.restarts_used;
  out["seed"] = c.seed;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Distance-to-kernel transforms, Euclidean repair and kernel k-means";

  g_error_type = PyErr_NewException("gowerk._core.GowerkError", PyExc_ValueError, nullptr);
  m.attr("GowerkError") = py::handle(g_error_type);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::reinterpret_borrow<py::object>(g_error_type)(py::str(e.what()));
      inst.attr("code") = py::str(std::string(to_string(e.code())));
      if (const auto* psd = dynamic_cast<const NotPositiveSemidefiniteError*>(&e)) {
        inst.attr("eigenvalue") = psd->eigenvalue();
      }
      PyErr_SetObject(g_error_type, inst.ptr());
    }
  });

  m.def("validate_dissimilarity",
        [](const Matrix& d) { return to_dissimilarity(d).values(); }, py::arg("d"),
        "Canonicalized copy of a hollow symmetric non-negative matrix.");

  m.def("sym_eigen",
        [](const Matrix& a) {
          const EigenDecomposition e = sym_eigen(to_kernel(a));
          return py::make_tuple(e.eigenvalues, e.eigenvectors);
        },
        py::arg("a"), "(eigenvalues descending, eigenvectors as columns) by cyclic Jacobi.");
  m.def("min_eigenvalue", [](const Matrix& a) { return min_eigenvalue(to_kernel(a)); },
        py::arg("a"));

  m.def("gower_transform",
        [](const Matrix& d, const Vector& s) {
          return gower_transform(to_dissimilarity(d), SVector::from(s)).values();
        },
        py::arg("d"), py::arg("s"));
  m.def("centered_transform",
        [](const Matrix& d) { return centered_transform(to_dissimilarity(d)).values(); },
        py::arg("d"));
  m.def("recover_distances",
        [](const Matrix& f) { return recover_distances(to_kernel(f)).values(); },
        py::arg("f"));
  m.def("embed",
        [](const Matrix& f, double eps_psd) {
          const Embedding y = embed(to_kernel(f), eps_psd);
          return py::make_tuple(y.points, y.retained_eigenvalues);
        },
        py::arg("f"), py::arg("eps_psd") = kEpsPsd, "(points m×r, retained eigenvalues).");
  m.def("is_euclidean",
        [](const Matrix& d, double eps_psd) {
          const EuclideanVerdict v = is_euclidean(to_dissimilarity(d), eps_psd);
          return py::make_tuple(v.euclidean, v.lambda_min);
        },
        py::arg("d"), py::arg("eps_psd") = kEpsPsd);
  m.def("schoenberg_exp_kernel",
        [](const Matrix& d, double gamma) {
          return schoenberg_exp_kernel(to_dissimilarity(d), gamma).values();
        },
        py::arg("d"), py::arg("gamma"));

  m.def("gower_sigma", [](const Matrix& d) { return gower_sigma(to_dissimilarity(d)); },
        py::arg("d"));
  m.def("euclidise",
        [](const Matrix& d, const std::string& mode) {
          const EuclidesationReport r = euclidise(to_dissimilarity(d), parse_shift_mode(mode));
          py::dict out;
          out["sigma"] = r.sigma;
          out["mode"] = std::string(to_string(r.mode));
          out["pre_lambda_min"] = r.pre_lambda_min;
          out["post_lambda_min"] = r.post_lambda_min;
          out["repaired"] = r.repaired.values();
          return out;
        },
        py::arg("d"), py::arg("mode") = "corrected");
  m.def("metric_constant", [](const Matrix& d) { return metric_constant(to_dissimilarity(d)); },
        py::arg("d"));
  m.def("metricize",
        [](const Matrix& d, double c) { return metricize(to_dissimilarity(d), c).values(); },
        py::arg("d"), py::arg("c"));

  m.def("point_to_centroid_sq",
        [](const Matrix& k, Index i, const std::vector<Index>& cluster) {
          return point_to_centroid_sq(to_kernel(k), i, cluster);
        },
        py::arg("k"), py::arg("i"), py::arg("cluster"), "Indices are 0-based.");
  m.def("cost_of",
        [](const Matrix& k, const std::vector<int>& a, int clusters) {
          return cost_of(to_kernel(k), a, clusters);
        },
        py::arg("k"), py::arg("assignments"), py::arg("n_clusters"), "Labels are 1-based.");
  m.def("weighted_cost_of",
        [](const Matrix& k, const std::vector<int>& a, int clusters, const Vector& w) {
          return weighted_cost_of(to_kernel(k), a, clusters, WeightVector::from(w));
        },
        py::arg("k"), py::arg("assignments"), py::arg("n_clusters"), py::arg("weights"));
  m.def("lloyd",
        [](const Matrix& k, int clusters, std::uint64_t seed, int restarts, int max_iter,
           const std::string& init, unsigned threads) {
          LloydOptions o;
          o.k = clusters;
          o.seed = seed;
          o.restarts = restarts;
          o.max_iter = max_iter;
          o.init = parse_init_method(init);
          o.threads = threads;
          const KernelMatrix kernel = to_kernel(k);
          Clustering c;
          {
            py::gil_scoped_release release;
            c = lloyd(kernel, o);
          }
          return clustering_dict(c);
        },
        py::arg("k"), py::arg("n_clusters"), py::arg("seed") = 0, py::arg("restarts") = 10,
        py::arg("max_iter") = 100, py::arg("init") = "kmeans++", py::arg("threads") = 1);
  m.def("exhaustive_best",
        [](const Matrix& k, int clusters) {
          return clustering_dict(exhaustive_best(to_kernel(k), clusters));
        },
        py::arg("k"), py::arg("n_clusters"));
  m.def("shift_cost_check",
        [](const Matrix& k, const std::vector<int>& a, int clusters, double sigma) {
          const ShiftCostCheck r = shift_cost_check(to_kernel(k), a, clusters, sigma);
          py::dict out;
          out["original"] = r.original;
          out["shifted"] = r.shifted;
          out["predicted_delta"] = r.predicted_delta;
          out["holds"] = r.holds;
          return out;
        },
        py::arg("k"), py::arg("assignments"), py::arg("n_clusters"), py::arg("sigma"));

  m.def("paper_repro",
        [](std::vector<std::string> only, double tol) {
          repro::Options o;
          o.only = {only.begin(), only.end()};
          o.print_tol = tol;
          std::vector<repro::Check> checks;
          {
            py::gil_scoped_release release;
            checks = repro::run(o);
          }
          py::list out;
          for (const auto& c : checks) {
            py::dict d;
            d["id"] = c.id;
            d["section"] = c.section;
            d["pass"] = c.pass;
            d["detail"] = c.detail;
            out.append(d);
          }
          return out;
        },
        py::arg("only") = std::vector<std::string>{}, py::arg("tol") = 0.05);

#ifdef GOWERK_VERSION
  m.attr("__version__") = GOWERK_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
