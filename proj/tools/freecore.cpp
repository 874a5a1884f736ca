// freecore: structure of free products of algebras with almost periodic states.
//
//   freecore compute     A.json B.json   M = M_d ⊕ M_c, type, Sd, T-set
//   freecore core        A.json B.json   discrete core as an amalgamated free product
//   freecore centralizer A.json B.json   centralizer of the free product state
//   freecore sd          A.json B.json   Sd-invariant
//   freecore fdim        A.json [B.json] | scenario.json
//   freecore oracle-check [scenario.json]
//
// Exit status: 0 ok, 1 oracle mismatch, 2 invalid input, 3 outside the supported theory.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "freecore/freecore.hpp"
#include "freecore/io.hpp"
#include "freecore/oracles.hpp"

namespace {

using namespace freecore;
using io::Json;

struct Options {
  int height = 3;
  std::string format = "text";
  std::string gamma_choice = "smallest";
  bool oracle = false;
  std::vector<std::string> files;
};

bool machine(const Options& o) { return o.format == "machine"; }

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

// Structural claims carry the statement they rest on.
void claim(const std::string& text, const std::string& anchor) { std::cout << text << "    [" << anchor << "]\n"; }

std::pair<AlgebraSpec, AlgebraSpec> two_specs(const Options& o) {
  if (o.files.size() != 2) throw Error(ErrorKind::ParseError, "expected two algebra documents");
  return {io::spec_of(io::load_file(o.files[0])), io::spec_of(io::load_file(o.files[1]))};
}

int oracle_failures(const std::vector<oracle::Check>& checks, const Options& o, Json* sink) {
  int failed = 0;
  Json arr = Json::array();
  for (const auto& c : checks) {
    failed += c.pass ? 0 : 1;
    if (sink) arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    else if (!machine(o)) std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
  }
  if (sink) *sink = arr;
  return failed;
}

int run_compute(const Options& o) {
  auto [a, b] = two_specs(o);
  auto r = free_product(a, b, o.height);
  std::vector<oracle::Check> checks;
  if (o.oracle) {
    auto gens = spectral_generators(a);
    auto more = spectral_generators(b);
    gens.insert(gens.end(), more.begin(), more.end());
    auto rank = oracle::lattice_rank(gens);
    checks.push_back({"Sd rank by elimination", rank == r.sd.rank(), std::to_string(rank)});
  }
  if (machine(o)) {
    Json j = io::free_product_json(r);
    if (o.oracle) oracle_failures(checks, o, &j["oracle"]);
    emit(j);
  } else {
    std::string md;
    for (const auto& at : r.m_d) md += (md.empty() ? "" : " ⊕ ") + std::string("ℂ_{") + at.weight.to_string() + "}";
    claim("M_d = " + (md.empty() ? std::string("0") : md), "M_d is finite dimensional; scalar atoms α + β - 1 for α + β > 1");
    claim("M_c: factor of type " + r.m_c_type.to_string() + ", unit weight " + r.m_c_unit_weight.to_string(),
          "M_c is of type II₁ iff both states are tracial");
    claim("Sd(M_c) = " + r.sd.to_string(), "Γ is generated by the point spectra of the modular operators");
    claim("T(M_c) = " + r.t_set.to_string(), "T(M_c) = {t : σ_t^{φ₁} = Id = σ_t^{φ₂}}");
    claim("M_c' ∩ M_c^ω = ℂ", "free product factors have no nontrivial central sequences");
    for (const auto& line : r.reduction_trace) claim("reduction: " + line, "unique i₀ and p with M_{i₀}p = ℂp, 1_{M_d} ≤ p");
  }
  return oracle_failures(checks, o, nullptr) ? 1 : 0;
}

int run_core(const Options& o) {
  auto [a, b] = two_specs(o);
  auto core = build_core(a, b, o.height);
  if (machine(o)) {
    emit(io::core_json(core));
    return 0;
  }
  claim("Γ = " + core.labels.group.to_string(), "Sd(M_c) generated by the point spectra");
  claim("ℂ ⋊ G ≅ ℓ^∞(Γ), labels truncated at height " + std::to_string(core.labels.height),
        "minimal projections e_γ, γ ∈ Γ");
  for (const auto& e : core.labels.labels)
    claim("  Tr(e_" + e.value.to_string() + ") = " + core.labels.trace_of_e(e.value).to_string(), "Tr(e_γ) = γ⁻¹");
  if (core.labels.trace_sum_diverges()) claim("Σ_γ Tr(e_γ) = +∞", "Σ γ⁻¹ over a nontrivial Γ diverges");
  auto side = [&](const std::vector<CrossedComponent>& comps, int i) {
    for (const auto& c : comps)
      claim("M" + std::string(i == 1 ? "₁" : "₂") + " summand " + std::to_string(c.source_index) + ": " +
                CrossedComponent::shape_name(c.shape) + ", " + c.description.to_string(),
            c.shape == CrossedComponent::Shape::HyperfiniteSemifinite ? "crossed product of a hyperfinite algebra is hyperfinite"
            : c.shape == CrossedComponent::Shape::TensorWithLabels    ? "inner modular action: M_i ⋊ G ≅ M_i ⊗̄ ℓ^∞(Γ)"
                                                                      : "direct sum of amplifications of the fixed-point algebra");
  };
  side(core.first, 1);
  side(core.second, 2);
  claim("M ⋊ G = " + core.expression.to_string(), "(M ⋊ G, E_φ) = (M₁ ⋊ G, E_{φ₁}) ⋆_{ℂ⋊G} (M₂ ⋊ G, E_{φ₂})");
  claim("central part: " + (core.m_d_copies ? core.m_d_copies->to_string() + " ⊕ " : std::string()) +
            core.core_of_m_c.to_string(),
        "countably many copies of M_d plus the discrete core");
  for (const auto& g : core.labels.group.generators()) {
    auto d = dual_action(core, g);
    for (const auto& [from, to] : d.relabel)
      claim("  θ_" + g.to_string() + "(e_" + from.to_string() + ") = e_" + to.to_string(), "θ_γ(e_γ') = e_γγ'");
    claim("  Tr ∘ θ_" + g.to_string() + " = " + d.trace_scaling.to_string() + " Tr", "Tr ∘ θ_γ = γ⁻¹ Tr");
  }
  return 0;
}

int run_centralizer(const Options& o) {
  auto [a, b] = two_specs(o);
  auto r = centralizer_structure(a, b, o.height);
  if (machine(o)) {
    emit(io::centralizer_json(r));
    return 0;
  }
  claim("centralizer ≅ " + r.expression.to_string(), r.citation);
  claim("canonical form: " + r.canonical.to_string(), "class of direct sums of hyperfinite algebras and amplified L(F_r)");
  if (r.core) claim("discrete core: " + describe_core(*r.core), "core stably isomorphic to the centralizer");
  if (!r.expansion.empty()) {
    std::string ex;
    for (const auto& g : r.expansion) ex += (ex.empty() ? "" : ", ") + g.to_string();
    claim("expansion exponents γ (height " + std::to_string(o.height) + "): " + ex, "γ ranges over Γ");
  }
  if (r.cartan_free) claim("no Cartan subalgebra", kCiteCartan);
  if (r.prime) claim("prime", kCitePrime);
  return 0;
}

int run_sd(const Options& o) {
  auto [a, b] = two_specs(o);
  auto g = sd_invariant(a, b);
  if (machine(o)) {
    emit(io::group_json(g));
    return 0;
  }
  claim("Sd = " + g.to_string() + " (rank " + std::to_string(g.rank()) + ")",
        "multiplicative group generated by the point spectra");
  for (const auto& gen : g.generators()) std::cout << "  generator " << gen << " " << io::exponent_map(g, gen).dump() << "\n";
  return 0;
}

int run_fdim(const Options& o) {
  if (o.files.empty() || o.files.size() > 2) throw Error(ErrorKind::ParseError, "expected one or two documents");
  auto first = io::load_file(o.files[0]);
  if (io::is_scenario(first)) {
    if (o.files.size() != 1) throw Error(ErrorKind::ParseError, "a scenario document is used alone");
    auto sc = io::scenario_of(first);
    auto r = compression_formula(sc, GammaChoice::parse(o.gamma_choice));
    std::vector<oracle::Check> checks;
    if (o.oracle && sc.indices.size() == 2) {
      auto other = r.order[1];
      auto seq = oracle::sequential_two_index_r(sc.indices[sc.distinguished], sc.indices[other], *r.gamma[other]);
      checks.push_back({"sequential composition", seq == r.r, seq.to_string()});
    }
    if (machine(o)) {
      Json j = io::compression_json(sc, r);
      if (o.oracle) oracle_failures(checks, o, &j["oracle"]);
      emit(j);
    } else {
      claim("r = " + r.r.to_string(), "r = β(o)⁻² ((β(o)² - Σ_{J_o} α²) + Σ_{i≠o} (β(i)² - γ(i)² - Σ_{J_i} α²))");
      claim("p_o P p_o ≅ " + r.expr.to_string(), "Q(o) ⋆ L(F_r) ⋆ ⋆_{i≠o} [γ(i)/β(o), Q(i)_{γ(i)/β(i)}]");
      for (const auto& t : r.terms) std::cout << "  " << t << "\n";
      for (std::size_t i = 0; i < sc.indices.size(); ++i)
        if (r.gamma[i]) std::cout << "  γ(" << sc.indices[i].id << ") = " << *r.gamma[i] << "\n";
    }
    return oracle_failures(checks, o, nullptr) ? 1 : 0;
  }
  auto a = io::spec_of(first);
  if (o.files.size() == 1) {
    auto v = fdim(a);
    if (machine(o)) emit({{"name", a.name}, {"fdim", v.to_string()}});
    else claim("fdim(" + a.name + ") = " + v.display(), "fdim = 1 + Σ w²(r - 1) - Σ (a/n)²");
    return 0;
  }
  auto b = io::spec_of(io::load_file(o.files[1]));
  auto p = finite_free_product(a, b);
  std::vector<oracle::Check> checks;
  if (o.oracle) {
    auto lhs = fdim(p.as_spec());
    checks.push_back({"free dimension additivity", lhs == p.fdim_total, lhs.to_string()});
  }
  if (machine(o)) {
    Json atoms = Json::array();
    for (const auto& at : p.atoms) atoms.push_back(at.weight.to_string());
    Json j{{"fdim", {fdim(a).to_string(), fdim(b).to_string()}},
           {"atoms", atoms},
           {"diffuse_weight", p.diffuse_weight.to_string()},
           {"param", p.param.to_string()},
           {"expression", p.expr().to_string()}};
    if (o.oracle) oracle_failures(checks, o, &j["oracle"]);
    emit(j);
  } else {
    claim("fdim: " + fdim(a).display() + " + " + fdim(b).display() + " = " + p.fdim_total.display(),
          "free dimension is additive over free products");
    claim(a.name + " ⋆ " + b.name + " ≅ " + p.expr().to_string(), "M_d ⊕ L(F_r) with r from free dimension balance");
  }
  return oracle_failures(checks, o, nullptr) ? 1 : 0;
}

int run_oracle_check(const Options& o) {
  auto checks = oracle::builtin_checks();
  if (!o.files.empty()) {
    auto sc = io::scenario_of(io::load_file(o.files.front()));
    if (sc.indices.size() != 2) throw Error(ErrorKind::InvalidScenario, "the sequential oracle takes two-index scenarios");
    auto r = compression_formula(sc, GammaChoice::parse(o.gamma_choice));
    auto other = r.order[1];
    auto seq = oracle::sequential_two_index_r(sc.indices[sc.distinguished], sc.indices[other], *r.gamma[other]);
    checks.push_back({"scenario " + o.files.front(), seq == r.r, r.r.to_string() + " vs " + seq.to_string()});
  }
  if (machine(o)) {
    Json j;
    int failed = oracle_failures(checks, o, &j["checks"]);
    j["pass"] = failed == 0;
    emit(j);
    return failed ? 1 : 0;
  }
  return oracle_failures(checks, o, nullptr) ? 1 : 0;
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::UnsupportedStructure:
    case ErrorKind::HypothesesNotRecognized: return 3;
    default: return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structure of free products with almost periodic states"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--height", opt.height, "truncation height for Γ-indexed data")->check(CLI::NonNegativeNumber);
  app.add_option("--format", opt.format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
  app.add_option("--gamma-choice", opt.gamma_choice, "smallest | explicit:<rational>");
  app.add_flag("--oracle", opt.oracle, "cross-check results with independent computations");

  struct Cmd {
    const char* name;
    const char* help;
    int (*run)(const Options&);
  };
  const Cmd cmds[] = {
      {"compute", "decomposition M = M_d ⊕ M_c", run_compute},
      {"core", "discrete core summary", run_core},
      {"centralizer", "centralizer of the free product state", run_centralizer},
      {"sd", "Sd-invariant", run_sd},
      {"fdim", "free dimension of one document, a finite free product, or a scenario's r", run_fdim},
      {"oracle-check", "run the built-in cross-checks", run_oracle_check},
  };
  int (*selected)(const Options&) = nullptr;
  for (const auto& c : cmds) {
    auto* sub = app.add_subcommand(c.name, c.help)->fallthrough();
    sub->add_option("files", opt.files, "input documents");
    sub->callback([&selected, run = c.run] { selected = run; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    return selected(opt);
  } catch (const Error& e) {
    std::cerr << "freecore: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "freecore: " << e.what() << "\n";
    return 2;
  }
}
