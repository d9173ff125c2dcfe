#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "alcove/acceptance.hpp"
#include "alcove/category_analysis.hpp"
#include "alcove/errors.hpp"
#include "alcove/invariants.hpp"

using namespace alcove;
using nlohmann::ordered_json;

namespace {

struct Common {
  std::string type;
  int level = 1;
  std::size_t max_labels = 20000;
  bool allow_large = false;
};

struct Session {
  std::unique_ptr<AlcoveContext> ctx;
  std::unique_ptr<ModularData> md;
};

Session open(const Common& c) {
  if (c.level < 1) throw Error(ErrorCode::Parse, "level must be at least 1");
  Session s;
  AlcoveOptions opts;
  opts.max_labels = c.max_labels;
  opts.allow_large = c.allow_large;
  s.ctx = std::make_unique<AlcoveContext>(std::make_shared<const RootSystem>(LieType::parse(c.type)), c.level, opts);
  s.md = std::make_unique<ModularData>(*s.ctx);
  return s;
}

std::string complex_text(std::complex<long double> z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.15g%+.15gi", static_cast<double>(z.real()), static_cast<double>(z.imag()));
  return buf;
}

std::string real_text(long double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.15g", static_cast<double>(x));
  return buf;
}

std::string labels_text(const AlcoveContext& ctx, const std::vector<LabelId>& ids) {
  std::string out;
  for (LabelId id : ids) out += (out.empty() ? "(" : " (") + ctx.label(id).to_string() + ")";
  return out.empty() ? "-" : out;
}

std::string surd_text(const SurdValue& v) { return complex_text(v.numeric()) + "\texact: " + v.to_string(); }

// ---------------------------------------------------------------------------

void cmd_alcove(const Common& c) {
  auto s = open(c);
  const auto& ctx = *s.ctx;
  std::cout << ctx.root_system().name() << " level " << ctx.level() << ": " << ctx.size() << " labels, center order "
            << ctx.center().order() << ", zeta order " << s.md->order() << "\n";
  std::cout << "id\tweight\tdual\tqdim\ttwist\n";
  for (LabelId a = 0; a < ctx.size(); ++a)
    std::cout << a << '\t' << ctx.label(a).to_string() << '\t' << ctx.label(ctx.dual(a)).to_string() << '\t'
              << real_text(s.md->qdim(a).numeric().real()) << "\tzeta^" << s.md->twist_exponent(a) << '\n';
}

void cmd_fusion(const Common& c, const std::string& only) {
  auto s = open(c);
  const auto& ctx = *s.ctx;
  std::cout << "lambda\tgamma\teta\tN\n";
  auto emit = [&](LabelId a) {
    for (LabelId b = 0; b < ctx.size(); ++b)
      for (const auto& [e, m] : ctx.fuse(a, b))
        std::cout << ctx.label(a).to_string() << '\t' << ctx.label(b).to_string() << '\t' << ctx.label(e).to_string()
                  << '\t' << m << '\n';
  };
  if (!only.empty()) {
    emit(ctx.require(Weight::parse(only, ctx.root_system().rank())));
    return;
  }
  const auto table = build_fusion_table(ctx);
  for (LabelId a = 0; a < ctx.size(); ++a)
    for (LabelId b = 0; b < ctx.size(); ++b)
      for (const auto& [e, m] : table.row(a, b))
        std::cout << ctx.label(a).to_string() << '\t' << ctx.label(b).to_string() << '\t' << ctx.label(e).to_string()
                  << '\t' << m << '\n';
}

void cmd_smatrix(const Common& c, bool numeric) {
  auto s = open(c);
  const auto& ctx = *s.ctx;
  const auto m = s.md->smatrix(build_fusion_table(ctx));
  std::cout << "# rows and columns in label order; exact entries are 'e:c' terms of sum c zeta^e, zeta = exp(2 pi i / "
            << s.md->order() << ")\n";
  for (LabelId a = 0; a < ctx.size(); ++a) {
    std::cout << ctx.label(a).to_string();
    for (LabelId b = 0; b < ctx.size(); ++b)
      std::cout << '\t' << (numeric ? complex_text(m.at(a, b).numeric()) : m.at(a, b).to_string());
    std::cout << '\n';
  }
}

std::vector<CenterSubgroup> subgroups(const AlcoveContext& ctx, const std::string& selector) {
  if (!selector.empty()) return {ctx.center().select(selector)};
  return ctx.center().cyclic_subgroups();
}

ordered_json subset_json(const ClosedSubset& s) { return {{"name", s.describe()}, {"size", s.size()}}; }

ordered_json report_json(const AlcoveContext& ctx, const SubgroupReport& r, bool all_products) {
  ordered_json j;
  j["subgroup"] = r.subgroup.label;
  j["gamma_size"] = r.gamma.size();
  j["delta_size"] = r.delta.size();
  j["verdict"] = to_string(r.verdict);
  j["dw"] = r.dw;
  ordered_json degs = ordered_json::array();
  for (const auto& d : r.degeneracy.degenerates)
    degs.push_back({{"label", ctx.label(d.label).coords()}, {"parity", d.parity > 0 ? "even" : "odd"}});
  j["degenerates"] = degs;
  j["torus_dim"] = r.quotient ? ordered_json(r.quotient->torus_dimension()) : ordered_json(nullptr);
  if (r.quotient) {
    ordered_json orbits = ordered_json::array();
    for (std::size_t i = 0; i < r.quotient->orbits.size(); ++i) {
      ordered_json members = ordered_json::array();
      for (LabelId id : r.quotient->orbits[i]) members.push_back(ctx.label(id).coords());
      orbits.push_back({{"members", members}, {"stabilizer", r.quotient->stabilizers[i]}});
    }
    j["orbits"] = orbits;
  }
  ordered_json factors = ordered_json::array();
  for (std::size_t i = 0; i < r.products.size() && (all_products || i == 0); ++i) {
    const auto& p = r.products[i];
    factors.push_back({{"gamma", subset_json(p.gamma_factor)},
                       {"delta", subset_json(p.delta_factor)},
                       {"intersection_size", p.intersection.size()},
                       {"factors_modular", p.factors_modular},
                       {"s_factorization_checked", p.s_factorization_checked}});
  }
  j["factors"] = factors;
  j["determinant_nonzero"] = r.determinant_nonzero ? ordered_json(*r.determinant_nonzero) : ordered_json(nullptr);
  return j;
}

void print_report(const AlcoveContext& ctx, const SubgroupReport& r, bool all_products) {
  std::cout << "subgroup " << r.subgroup.label << ": |Gamma|=" << r.gamma.size() << " |Delta|=" << r.delta.size()
            << " verdict=" << to_string(r.verdict) << " dw=" << (r.dw ? "yes" : "no") << " torus_dim="
            << (r.quotient ? std::to_string(r.quotient->torus_dimension()) : std::string("-")) << '\n';
  std::cout << "  degenerates:";
  for (const auto& d : r.degeneracy.degenerates)
    std::cout << " (" << ctx.label(d.label).to_string() << ")" << (d.parity > 0 ? " even" : " odd");
  std::cout << '\n';
  if (r.determinant_nonzero) std::cout << "  det S != 0: " << (*r.determinant_nonzero ? "yes" : "no") << '\n';
  if (r.products.empty()) {
    std::cout << "  factors: none\n";
    return;
  }
  for (std::size_t i = 0; i < r.products.size() && (all_products || i == 0); ++i) {
    const auto& p = r.products[i];
    std::cout << "  factors: " << p.gamma_factor.describe() << " (" << p.gamma_factor.size() << ") x "
              << p.delta_factor.describe() << " (" << p.delta_factor.size() << ")"
              << (p.s_factorization_checked ? ", S factorizes" : "") << '\n';
  }
}

ordered_json envelope(const AlcoveContext& ctx) {
  ordered_json j;
  j["schema_version"] = 1;
  j["type"] = ctx.root_system().name();
  j["level"] = ctx.level();
  j["label_count"] = ctx.size();
  return j;
}

void cmd_classify(const Common& c, const std::string& selector, bool json, bool all) {
  auto s = open(c);
  const auto& ctx = *s.ctx;
  std::vector<SubgroupReport> reports;
  for (const auto& z : subgroups(ctx, selector)) reports.push_back(classify_subgroup(*s.md, z));
  if (json) {
    auto j = envelope(ctx);
    j["subgroups"] = ordered_json::array();
    for (const auto& r : reports) j["subgroups"].push_back(report_json(ctx, r, all));
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::cout << ctx.root_system().name() << " level " << ctx.level() << " (" << ctx.size() << " labels)\n";
  for (const auto& r : reports) print_report(ctx, r, all);
}

void cmd_dw_levels(const std::string& type, const std::string& selector, int k_max) {
  const auto rs = std::make_shared<const RootSystem>(LieType::parse(type));
  const CenterGroup center(*rs);
  const auto levels = dw_levels(*rs, center.select(selector), k_max);
  for (std::size_t i = 0; i < levels.size(); ++i) std::cout << (i ? " " : "") << levels[i];
  std::cout << '\n';
}

void cmd_quotient(const Common& c, const std::string& selector) {
  auto s = open(c);
  const auto& ctx = *s.ctx;
  const auto gamma = gamma_subset(ctx, ctx.center().select(selector));
  const auto report = degeneracy_report(gamma, *s.md);
  const auto q = quotient_data(ctx, gamma, report);
  std::cout << gamma.describe() << ": " << gamma.size() << " labels, degenerate group order " << q.group_order
            << ", quotient simple count " << q.simple_count() << '\n';
  for (std::size_t i = 0; i < q.orbits.size(); ++i)
    std::cout << "orbit " << labels_text(ctx, q.orbits[i]) << " stabilizer " << q.stabilizers[i] << '\n';
}

void cmd_decompose(const Common& c, const std::string& selector, bool all) {
  auto s = open(c);
  const auto& ctx = *s.ctx;
  const auto subset = gamma_subset(ctx, ctx.center().select(selector.empty() ? "Z1" : selector));
  const auto products = decompose_product(subset, degeneracy_report(subset, *s.md), *s.md);
  if (products.empty()) {
    std::cout << subset.describe() << ": None\n";
    return;
  }
  for (std::size_t i = 0; i < products.size() && (all || i == 0); ++i) {
    const auto& p = products[i];
    std::cout << subset.describe() << " = " << p.gamma_factor.describe() << " (" << p.gamma_factor.size() << ") x "
              << p.delta_factor.describe() << " (" << p.delta_factor.size() << "), intersection "
              << labels_text(ctx, p.intersection) << ", factors modular: " << (p.factors_modular ? "yes" : "no")
              << ", S factorizes: " << (p.s_factorization_checked ? "yes" : "not checked") << '\n';
  }
}

int cmd_moo(const Common& c, const std::string& selector, const std::string& file, int verify, std::uint64_t seed) {
  auto s = open(c);
  const auto spec = gauss_spec(*s.md, s.ctx->center().select(selector));
  const auto a = LinkingMatrix::load(file);
  std::cout << spec.describe() << "\nsignature " << a.signature() << ", components " << a.size() << '\n';
  std::cout << "Z_N(M,r) = " << surd_text(moo_invariant(a, spec)) << '\n';
  if (verify > 0) {
    const auto r = kirby_fuzz(spec, verify, seed);
    std::cout << "Kirby fuzz: " << r.trials << " sequences, " << r.failures << " changed the invariant\n";
    if (r.failures) {
      std::cout << r.first_failure << '\n';
      return static_cast<int>(ErrorCode::Internal);
    }
  }
  return 0;
}

void cmd_invariant(const Common& c, const std::string& selector, std::vector<std::int64_t> framings,
                   const std::string& matrix) {
  auto s = open(c);
  const auto& ctx = *s.ctx;
  if (!matrix.empty()) {
    const auto a = LinkingMatrix::load(matrix);
    if (!a.is_diagonal())
      throw Error(ErrorCode::NonDiagonalPresentation,
                  "invariant needs a disjoint union of framed unknots; use `moo` for non-diagonal linking matrices");
    framings = a.framings();
  }
  const auto labels = gamma_subset(ctx, ctx.center().select(selector));
  const auto report = degeneracy_report(labels, *s.md);
  const Verdict v = modularity_verdict(report);
  SurdValue value;
  if (v == Verdict::Modular) {
    value = rt_invariant_diagonal(framings, *s.md, labels, report);
  } else if (v == Verdict::Quotientable) {
    value = quotient_invariant_diagonal(framings, *s.md, quotient_data(ctx, labels, report));
  } else {
    throw Error(ErrorCode::NonModularLabelSet, labels.describe() + " has odd degenerates; no invariant");
  }
  std::cout << labels.describe() << " (" << to_string(v) << "), framings";
  for (auto f : framings) std::cout << ' ' << f;
  std::cout << "\ninvariant = " << surd_text(value) << '\n';
}

int cmd_accept(const std::vector<int>& ids, bool timing) {
  int failed = 0;
  if (ids.empty()) {
    for (int id = 1; id <= kCriterionCount; ++id) {
      const auto r = run_criterion(id);
      std::cout << format_result(r, timing) << std::endl;
      failed += !r.passed;
    }
  } else {
    for (int id : ids) {
      const auto r = run_criterion(id);
      std::cout << format_result(r, timing) << std::endl;
      failed += !r.passed;
    }
  }
  return failed ? 1 : 0;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("type", c.type, "Lie type, e.g. A1, B2, G2, E8")->required();
  sub->add_option("level", c.level, "Level k >= 1")->required()->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact level-k Weyl alcove fusion categories, closed subsets and 3-manifold invariants"};
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  app.add_option("--max-labels", c.max_labels, "Refuse alcoves with more labels than this")->capture_default_str();
  app.add_flag("--allow-large", c.allow_large, "Override the label guardrail");
  app.set_version_flag("--version", "alcove 1.0");
  std::string selector, only, file, matrix;
  bool numeric = false, json = false, all = false, timing = false;
  int verify = 0, k_max = 12;
  std::uint64_t seed = 1;
  std::vector<std::int64_t> framings;
  std::vector<int> criteria;
  std::string dw_type;

  auto* alcove_cmd = app.add_subcommand("alcove", "List labels with duals, quantum dimensions and twists");
  add_common(alcove_cmd, c);
  auto* fusion_cmd = app.add_subcommand("fusion", "Fusion table as TSV: lambda gamma eta N");
  add_common(fusion_cmd, c);
  fusion_cmd->add_option("--lambda", only, "Only rows with this first factor (comma-separated coordinates)");
  auto* s_cmd = app.add_subcommand("smatrix", "Exact S-matrix");
  add_common(s_cmd, c);
  s_cmd->add_flag("--numeric", numeric, "Print complex floating-point values");
  auto* cl_cmd = app.add_subcommand("classify", "Classify Gamma_Z and Delta_Z for every cyclic subgroup");
  add_common(cl_cmd, c);
  cl_cmd->add_option("--subgroup", selector, "Only this subgroup (Z<d> or Z<d>@<i>)");
  cl_cmd->add_flag("--json", json, "Machine-readable report");
  cl_cmd->add_flag("--all", all, "Report every product decomposition");
  auto* dw_cmd = app.add_subcommand("dw-levels", "Levels k <= k_max satisfying the Dijkgraaf-Witten condition");
  dw_cmd->add_option("type", dw_type, "Lie type")->required();
  dw_cmd->add_option("subgroup", selector, "Z<d> or Z<d>@<i>")->required();
  dw_cmd->add_option("k_max", k_max, "Largest level")->required()->check(CLI::PositiveNumber);
  auto* q_cmd = app.add_subcommand("quotient", "Orbits and stabilizers of the degenerate group on Gamma_Z");
  add_common(q_cmd, c);
  q_cmd->add_option("subgroup", selector, "Z<d> or Z<d>@<i>")->required();
  auto* d_cmd = app.add_subcommand("decompose", "Product decompositions of Gamma_Z (default: full alcove)");
  add_common(d_cmd, c);
  d_cmd->add_option("--subgroup", selector, "Decompose Gamma of this subgroup");
  d_cmd->add_flag("--all", all, "Report every decomposition");
  auto* m_cmd = app.add_subcommand("moo", "Gauss-sum invariant of a linking matrix from Delta_Z data");
  add_common(m_cmd, c);
  m_cmd->add_option("subgroup", selector, "Z<d> or Z<d>@<i>")->required();
  m_cmd->add_option("matrix-file", file, "Linking matrix: n, then n rows of n integers")->required();
  m_cmd->add_option("--verify-kirby", verify, "Run this many random Kirby move sequences");
  m_cmd->add_option("--seed", seed, "Seed for --verify-kirby")->capture_default_str();
  auto* i_cmd = app.add_subcommand("invariant", "Normalized invariant of a diagonal surgery presentation");
  add_common(i_cmd, c);
  i_cmd->add_option("framings", framings, "Framings of the unknot components");
  i_cmd->add_option("--subgroup", selector, "Label set Gamma_Z (default Z1: full alcove)");
  i_cmd->add_option("--matrix", matrix, "Read a diagonal linking matrix from a file");
  auto* a_cmd = app.add_subcommand("accept", "Run the acceptance criteria");
  a_cmd->add_option("--criterion", criteria, "Only these criteria (1-10)");
  a_cmd->add_flag("--timing", timing, "Append wall-clock time per criterion");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*alcove_cmd) cmd_alcove(c);
    if (*fusion_cmd) cmd_fusion(c, only);
    if (*s_cmd) cmd_smatrix(c, numeric);
    if (*cl_cmd) cmd_classify(c, selector, json, all);
    if (*dw_cmd) cmd_dw_levels(dw_type, selector, k_max);
    if (*q_cmd) cmd_quotient(c, selector);
    if (*d_cmd) cmd_decompose(c, selector, all);
    if (*m_cmd) return cmd_moo(c, selector, file, verify, seed);
    if (*i_cmd) cmd_invariant(c, selector.empty() ? "Z1" : selector, framings, matrix);
    if (*a_cmd) return cmd_accept(criteria, timing);
  } catch (const ConsistencyError& e) {
    std::cerr << "internal consistency failure: " << e.what() << '\n';
    return static_cast<int>(ErrorCode::Internal);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ErrorCode::Internal);
  }
  return 0;
}
