#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pkt/gradcheck.hpp"
#include "pkt/io.hpp"
#include "pkt/qmi.hpp"
#include "pkt/retrieval.hpp"
#include "pkt/student.hpp"
#include "pkt/trainer.hpp"

namespace pkt::cli {

namespace {

KernelSpec make_kernel(const std::string& name, double width) {
  if (name == "cosine") return KernelSpec::cosine();
  if (name == "gaussian") return KernelSpec::gaussian(width);
  throw std::invalid_argument("unknown kernel '" + name + "' (expected cosine|gaussian)");
}

std::vector<std::size_t> parse_arch(const std::string& text) {
  std::vector<std::size_t> dims;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    long long v = -1;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || v <= 0) {
      throw std::invalid_argument("--arch: bad layer width '" + tok + "'");
    }
    dims.push_back(static_cast<std::size_t>(v));
  }
  if (dims.empty()) throw std::invalid_argument("--arch: no layer widths given");
  return dims;
}

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

struct TransferArgs {
  std::string input, teacher, arch, labels, out, loss_log;
  std::string kernel = "cosine";
  std::size_t epochs = 10;
  std::size_t batch_size = 128;
  double lr = 1e-4;
  double sigma_t = 1.0;
  double sigma_s = 1.0;
  double sup_weight = 0.0;
  std::uint64_t seed = 0;
  std::size_t log_every = 0;
};

int cmd_transfer(const TransferArgs& a, std::ostream& out) {
  const FeatureMatrix inputs = load_features(a.input);
  const FeatureMatrix teacher = load_features(a.teacher);
  std::vector<int> labels;
  if (!a.labels.empty()) labels = load_labels(a.labels);
  if (a.sup_weight > 0.0 && a.labels.empty()) {
    throw std::invalid_argument("--sup-weight > 0 requires --labels");
  }

  TrainConfig cfg;
  cfg.epochs = a.epochs;
  cfg.batch_size = a.batch_size;
  cfg.lr = a.lr;
  cfg.teacher_spec = make_kernel(a.kernel, a.sigma_t);
  cfg.student_spec = make_kernel(a.kernel, a.sigma_s);
  cfg.sup_weight = a.sup_weight;
  cfg.seed = a.seed;
  cfg.log_every = a.log_every;

  std::vector<std::size_t> dims{static_cast<std::size_t>(inputs.cols())};
  for (std::size_t d : parse_arch(a.arch)) dims.push_back(d);
  StudentModel model = StudentModel::glorot(dims, a.seed);

  std::optional<std::span<const int>> label_view;
  if (!labels.empty()) label_view = std::span<const int>(labels);
  const TrainResult result = train(std::move(model), inputs, teacher, label_view, cfg);

  save_model(a.out, result.model);
  if (!a.loss_log.empty()) {
    std::ofstream log_file(a.loss_log, std::ios::binary | std::ios::trunc);
    if (!log_file) throw IoError("cannot open '" + a.loss_log + "' for writing");
    write_loss_trace(log_file, result.trace);
    if (!log_file.flush()) throw IoError("failed writing '" + a.loss_log + "'");
  }
  const auto means = epoch_mean_losses(result.trace);
  if (!means.empty()) {
    out << "final_epoch_loss " << format_double(means.back()) << '\n';
  }
  return kExitOk;
}

int cmd_embed(const std::string& model_path, const std::string& input,
              const std::string& out_path) {
  const StudentModel model = load_model(model_path);
  const FeatureMatrix x = load_features(input);
  save_features(out_path, forward(model, x));
  return kExitOk;
}

struct EvalArgs {
  std::string db, db_labels, queries, query_labels;
  std::vector<std::size_t> top_k;
};

int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  FeatureMatrix db = load_features(a.db);
  std::vector<int> db_labels = load_labels(a.db_labels);
  const FeatureMatrix queries = load_features(a.queries);
  const std::vector<int> query_labels = load_labels(a.query_labels);

  const RetrievalIndex index(std::move(db), std::move(db_labels));
  const RetrievalResult r = evaluate(index, queries, query_labels, a.top_k);
  if (r.per_query_ap.empty()) {
    err << "eval: no query has a relevant database item\n";
    return kExitUsage;
  }
  if (r.skipped_queries > 0) {
    err << "eval: skipped " << r.skipped_queries << " queries without relevant items\n";
  }
  out << "mAP " << fixed4(100.0 * r.map) << '\n';
  for (const auto& [k, p] : r.top_k) out << "t-" << k << ' ' << fixed4(100.0 * p) << '\n';
  return kExitOk;
}

int cmd_qmi(const std::string& features, const std::string& labels_path,
            const std::string& kernel, double sigma, std::ostream& out) {
  const FeatureMatrix x = load_features(features);
  const std::vector<int> labels = load_labels(labels_path);
  const PotentialSet s = information_potentials(x, labels, make_kernel(kernel, sigma));
  out << "v_in " << format_double(s.v_in) << '\n'
      << "v_all " << format_double(s.v_all) << '\n'
      << "v_btw " << format_double(s.v_btw) << '\n'
      << "qmi " << format_double(s.qmi) << '\n';
  return kExitOk;
}

int cmd_gradcheck(GradCheckOptions opts, const std::string& kernel, double sigma,
                  std::ostream& out) {
  opts.kernel = make_kernel(kernel, sigma);
  const GradCheckResult r = run_gradient_check(opts);
  out << "coordinates " << r.coordinates << '\n'
      << "max_abs_error " << format_double(r.max_abs_error) << '\n'
      << "max_rel_error " << format_double(r.max_rel_error) << '\n';
  const bool ok = r.max_rel_error < kGradCheckTolerance;
  out << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kExitOk : kExitUsage;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Probabilistic knowledge transfer into small student networks", "pkt"};
  app.require_subcommand(1);

  TransferArgs ta;
  auto* transfer = app.add_subcommand("transfer", "Train a student to match the teacher's conditional affinities");
  transfer->add_option("--input", ta.input, "Raw student inputs (feature file)")->required();
  transfer->add_option("--teacher", ta.teacher, "Teacher features (feature file)")->required();
  transfer->add_option("--arch", ta.arch, "Layer widths after the input, e.g. 32,8")->required();
  transfer->add_option("--out", ta.out, "Output model path")->required();
  transfer->add_option("--epochs", ta.epochs)->capture_default_str();
  transfer->add_option("--batch-size", ta.batch_size)->capture_default_str();
  transfer->add_option("--lr", ta.lr)->capture_default_str();
  transfer->add_option("--kernel", ta.kernel, "cosine|gaussian")->capture_default_str();
  transfer->add_option("--sigma-t", ta.sigma_t, "Teacher gaussian width (2 sigma^2)")->capture_default_str();
  transfer->add_option("--sigma-s", ta.sigma_s, "Student gaussian width (2 sigma^2)")->capture_default_str();
  transfer->add_option("--labels", ta.labels, "Label file for the supervised term");
  transfer->add_option("--sup-weight", ta.sup_weight)->capture_default_str();
  transfer->add_option("--seed", ta.seed)->capture_default_str();
  transfer->add_option("--loss-log", ta.loss_log, "Write 'epoch batch loss' lines here");
  transfer->add_option("--log-every", ta.log_every, "Log every N batches (needs PKT_LOG)");

  std::string em_model, em_input, em_out;
  auto* embed = app.add_subcommand("embed", "Run a trained student over a feature file");
  embed->add_option("--model", em_model)->required();
  embed->add_option("--input", em_input)->required();
  embed->add_option("--out", em_out)->required();

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "Retrieval mAP and top-k precision");
  eval->add_option("--db", ea.db)->required();
  eval->add_option("--db-labels", ea.db_labels)->required();
  eval->add_option("--queries", ea.queries)->required();
  eval->add_option("--query-labels", ea.query_labels)->required();
  eval->add_option("--top-k", ea.top_k, "Comma-separated cutoffs")->delimiter(',');

  std::string q_features, q_labels, q_kernel = "cosine";
  double q_sigma = 1.0;
  auto* qmi = app.add_subcommand("qmi", "Information potentials and quadratic mutual information");
  qmi->add_option("--features", q_features)->required();
  qmi->add_option("--labels", q_labels)->required();
  qmi->add_option("--kernel", q_kernel, "cosine|gaussian")->capture_default_str();
  qmi->add_option("--sigma", q_sigma, "Gaussian width (2 sigma^2)")->capture_default_str();

  GradCheckOptions go;
  std::string g_kernel = "cosine";
  double g_sigma = 1.0;
  auto* gradcheck = app.add_subcommand("gradcheck", "Compare the analytic loss gradient with finite differences");
  gradcheck->add_option("--seed", go.seed)->capture_default_str();
  gradcheck->add_option("--n", go.n)->capture_default_str();
  gradcheck->add_option("--dim", go.dim)->capture_default_str();
  gradcheck->add_option("--kernel", g_kernel, "cosine|gaussian")->capture_default_str();
  gradcheck->add_option("--sigma", g_sigma, "Gaussian width (2 sigma^2)")->capture_default_str();
  gradcheck->add_flag("--flip-sign", go.flip_sign)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*transfer) return cmd_transfer(ta, out);
    if (*embed) return cmd_embed(em_model, em_input, em_out);
    if (*eval) return cmd_eval(ea, out, err);
    if (*qmi) return cmd_qmi(q_features, q_labels, q_kernel, q_sigma, out);
    if (*gradcheck) return cmd_gradcheck(go, g_kernel, g_sigma, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace pkt::cli
