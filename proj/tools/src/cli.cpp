#include "cellmatch_cli/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <functional>
#include <memory>
#include <optional>

#include "cellmatch/error.hpp"
#include "cellmatch/generators.hpp"
#include "cellmatch/homology.hpp"
#include "cellmatch/io.hpp"
#include "cellmatch/matching.hpp"
#include "cellmatch/pipelines.hpp"
#include "cellmatch/subdivision.hpp"
#include "cellmatch/transverse_flow.hpp"

namespace cellmatch::cli {
namespace {

using io::json;

constexpr const char* version = "1.0.0";
constexpr const char* enumeration_format = "cellmatch-enumeration-v1";
constexpr const char* validation_format = "cellmatch-validation-v1";

/// Everything the subcommand callbacks need; options bind into these fields.
struct Invocation {
  Invocation(std::ostream& o, std::ostream& e) : out(o), err(e) {}

  std::ostream& out;
  std::ostream& err;

  std::string input;
  std::string second_input;
  std::string output;
  std::string rel;

  std::string family;
  std::string params;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> factors;

  std::string method = "auto";
  std::size_t limit = 16;
  std::size_t bound = default_enumeration_bound;
  std::string field;
  bool filtration = false;
  int rounds = 1;
  std::string map_out;
  std::string propagate;
  std::string matching_out;
  std::string flow_field;
  std::string base_rule = "lowest";
  std::string structure_out;
  std::string loop;
  std::string circle;
  std::string betti;
  bool acyclic_rel = false;
  std::size_t budget = default_search_budget;

  std::function<int(Invocation&)> action;
};

void emit(Invocation& inv, const json& doc, const std::string& path) {
  if (path.empty()) {
    inv.out << io::dump(doc);
  } else {
    io::write_json(path, doc);
  }
}

ComplexPtr load_complex(const std::string& path) {
  return std::make_shared<const CellComplex>(io::complex_from_json(io::read_json(path)));
}

SubcomplexPair load_pair(const ComplexPtr& complex, const std::string& rel) {
  if (rel.empty()) return SubcomplexPair(complex);
  return io::pair_from_spec(complex, io::sub_from_json(io::read_json(rel)));
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  if (text.empty()) return out;
  const auto spec = parse_family("circle:" + text);
  return spec.params;
}

std::optional<Field> parse_optional_field(const std::string& tag) {
  if (tag.empty()) return std::nullopt;
  return parse_field(tag);
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_generate(Invocation& inv) {
  FamilySpec spec;
  spec.family = inv.family;
  if (std::find(family_names().begin(), family_names().end(), spec.family) ==
      family_names().end()) {
    throw invalid_input("unknown family \"" + spec.family + "\"");
  }
  spec.params = parse_ints(inv.params);
  spec.seed = inv.seed;
  for (const auto& f : inv.factors) spec.factors.push_back(parse_family(f));
  emit(inv, io::complex_to_json(generate(spec)), inv.output);
  return exit_ok;
}

int cmd_chi(Invocation& inv) {
  const auto pair = load_pair(load_complex(inv.input), inv.rel);
  inv.out << euler_characteristic(pair) << "\n";
  return exit_ok;
}

int emit_certificate(Invocation& inv, const SubcomplexPair& pair, const HallCertificate& cert) {
  if (!verify_certificate(pair, cert)) throw internal_failure("certificate failed verification");
  inv.err << "unmatchable: |A| = " << cert.a.size() << ", |I(A)| = " << cert.neighborhood.size()
          << "\n";
  emit(inv, io::certificate_to_json(cert), inv.output);
  return exit_unmatchable;
}

int cmd_match(Invocation& inv) {
  const auto complex = load_complex(inv.input);
  const auto pair = load_pair(complex, inv.rel);
  if (inv.method == "acyclic") {
    emit(inv, io::matching_to_json(match_acyclic_pair(pair, parse_optional_field(inv.field))),
         inv.output);
    return exit_ok;
  }
  if (inv.method == "auto" && euler_characteristic(pair) != 0) {
    inv.err << "relative Euler characteristic is " << euler_characteristic(pair) << "\n";
  }
  auto outcome = complete_matching(pair);
  if (auto* cert = std::get_if<HallCertificate>(&outcome)) return emit_certificate(inv, pair, *cert);
  emit(inv, io::matching_to_json(std::get<Matching>(outcome)), inv.output);
  return exit_ok;
}

int cmd_enumerate(Invocation& inv) {
  const auto pair = load_pair(load_complex(inv.input), inv.rel);
  const auto result = enumerate_matchings(pair, inv.limit, inv.bound);
  json list = json::array();
  for (const auto& m : result.matchings) list.push_back(io::matching_to_json(m));
  emit(inv, json{{"format", enumeration_format}, {"count", result.count}, {"matchings", list}},
       inv.output);
  return exit_ok;
}

int cmd_homology(Invocation& inv) {
  const auto pair = load_pair(load_complex(inv.input), inv.rel);
  const auto field = parse_optional_field(inv.field);
  if (inv.filtration) {
    emit(inv, io::filtration_to_json(acyclic_filtration(pair, field)), inv.output);
  } else {
    emit(inv, io::betti_to_json(betti_numbers(pair, field)), inv.output);
  }
  return exit_ok;
}

int cmd_subdivide(Invocation& inv) {
  if (inv.rounds < 1) throw invalid_input("--rounds must be at least 1");
  if (!inv.propagate.empty() && inv.output.empty()) {
    throw invalid_input("--propagate needs -o for the subdivided complex");
  }
  const auto source = load_complex(inv.input);
  std::optional<Matching> m;
  if (!inv.propagate.empty()) m = io::matching_from_json(io::read_json(inv.propagate));
  SubcomplexPair pair = m && inv.rel.empty()
                            ? SubcomplexPair::from_ids(source, m->relative_to(), false)
                            : load_pair(source, inv.rel);

  SubdivisionMap total;
  for (int r = 0; r < inv.rounds; ++r) {
    const ComplexPtr current = r == 0 ? source : total.subdivided;
    SubdivisionMap step = barycentric(current);
    if (m) {
      *m = propagate_matching(step, pair, *m);
      pair = subdivided_pair(step, pair);
    }
    if (r == 0) {
      total = step;
    } else {
      for (CellIndex c = 0; c < step.carrier.size(); ++c) {
        step.carrier[c] = total.carrier[step.carrier[c]];
      }
      step.source = source;
      total = std::move(step);
    }
  }
  emit(inv, io::complex_to_json(*total.subdivided), inv.output);
  if (!inv.map_out.empty()) io::write_json(inv.map_out, io::subdivision_to_json(total));
  if (m) emit(inv, io::matching_to_json(*m), inv.matching_out);
  return exit_ok;
}

int cmd_flow(Invocation& inv) {
  const GeometricComplex geometry(load_complex(inv.input));
  const FieldVector field{parse_point(inv.flow_field)};
  auto checked = check_transverse(geometry, field);
  if (auto* report = std::get_if<DegeneracyReport>(&checked)) {
    inv.err << "field is not transverse: " << report->reason << "\n";
    inv.out << io::dump(io::degeneracy_to_json(*report));
    return exit_precondition;
  }
  const FlowStructure fs = flow_structure(geometry, field, BaseRule::parse(inv.base_rule));
  const auto problems = fs.check_invariants();
  if (!problems.empty()) throw internal_failure("flow structure invariant: " + problems.front());
  if (!inv.structure_out.empty()) io::write_json(inv.structure_out, io::flow_to_json(fs));
  emit(inv, io::matching_to_json(flow_matching(fs)), inv.output);
  return exit_ok;
}

int cmd_orbits(Invocation& inv) {
  const auto complex = load_complex(inv.input);
  const Matching m = io::matching_from_json(io::read_json(inv.second_input));
  const auto pair = inv.rel.empty() ? SubcomplexPair::from_ids(complex, m.relative_to(), false)
                                    : load_pair(complex, inv.rel);
  const auto report = validate_matching(pair, m);
  if (!report.ok()) throw invalid_input("matching is invalid: " + report.violations.front());
  emit(inv, io::orbit_to_json(orbit_analysis(pair, m)), inv.output);
  return exit_ok;
}

int cmd_validate(Invocation& inv) {
  const auto complex = load_complex(inv.input);
  const Matching m = io::matching_from_json(io::read_json(inv.second_input));
  const auto pair = inv.rel.empty() ? SubcomplexPair::from_ids(complex, m.relative_to(), false)
                                    : load_pair(complex, inv.rel);
  const auto report = validate_matching(pair, m);
  emit(inv,
       json{{"format", validation_format}, {"valid", report.ok()}, {"violations", report.violations}},
       inv.output);
  for (const auto& v : report.violations) inv.err << v << "\n";
  return report.ok() ? exit_ok : exit_usage;
}

void report_stages(Invocation& inv, const PipelineResult& r) {
  inv.err << "stage pairs:";
  for (auto n : r.stage_pairs) inv.err << " " << n;
  inv.err << "\n";
}

int cmd_pipeline_sphere(Invocation& inv) {
  const auto result = match_sphere_pipeline(load_complex(inv.input));
  report_stages(inv, result);
  emit(inv, io::matching_to_json(result.matching), inv.output);
  return exit_ok;
}

int cmd_pipeline_loop(Invocation& inv) {
  const auto complex = load_complex(inv.input);
  const DualLoop dual = io::loop_from_json(io::read_json(inv.loop));
  std::vector<CellId> base;
  if (!inv.rel.empty()) base = load_pair(complex, inv.rel).sub_ids();
  std::optional<std::vector<CellId>> circle;
  if (inv.circle == "auto") {
    const auto found = find_core_circle(complex, dual, base, inv.budget);
    if (!found.cells) {
      inv.err << (found.status == LoopSearch::Status::exhausted ? "search budget exhausted"
                                                                : "no suitable circle exists")
              << "\n";
      return exit_precondition;
    }
    circle = found.cells;
  } else if (!inv.circle.empty()) {
    circle = io::sub_from_json(io::read_json(inv.circle)).cells;
  }
  const auto result = match_loop_pipeline(complex, dual, base, circle);
  report_stages(inv, result);
  emit(inv, io::matching_to_json(result.matching), inv.output);
  return exit_ok;
}

int cmd_dualloop_find(Invocation& inv) {
  const auto complex = load_complex(inv.input);
  std::optional<std::vector<int>> want;
  if (!inv.betti.empty()) want = parse_ints(inv.betti);
  if (!want && !inv.acyclic_rel) throw invalid_input("give --betti or --acyclic-rel");
  const auto accept = [&](const SubcomplexPair& pair) {
    if (want && complement_betti(pair).betti != *want) return false;
    if (inv.acyclic_rel && !betti_numbers(pair).all_zero()) return false;
    return true;
  };
  const auto search = find_dual_loop(complex, accept, inv.budget);
  if (!search.loop) {
    inv.err << (search.status == LoopSearch::Status::exhausted
                    ? "search budget exhausted after " + std::to_string(search.steps) + " steps"
                    : std::string("no dual loop satisfies the condition"))
            << "\n";
    return exit_precondition;
  }
  emit(inv, io::loop_to_json(*search.loop), inv.output);
  return exit_ok;
}

json capabilities() {
  return json{{"name", "cellmatch"},
              {"version", version},
              {"formats",
               {io::complex_format, io::sub_format, io::loop_format, io::matching_format,
                io::certificate_format, io::betti_format, io::subdivision_format,
                io::orbit_format, io::filtration_format, io::flow_format,
                io::degeneracy_format, enumeration_format, validation_format}},
              {"families", family_names()},
              {"commands",
               {"generate", "chi", "match", "enumerate", "homology", "subdivide", "flow",
                "orbits", "validate", "pipeline sphere", "pipeline loop", "dualloop find"}},
              {"exit_codes",
               {{"ok", exit_ok},
                {"usage", exit_usage},
                {"unmatchable", exit_unmatchable},
                {"precondition", exit_precondition}}}};
}

// ---------------------------------------------------------------------------
// Command line

CLI::App* subcommand(CLI::App& parent, Invocation& inv, const std::string& name,
                     const std::string& help, int (*action)(Invocation&)) {
  CLI::App* sub = parent.add_subcommand(name, help);
  sub->callback([&inv, action] { inv.action = action; });
  return sub;
}

void add_input(CLI::App* sub, Invocation& inv) {
  sub->add_option("complex", inv.input, "complex file")->required();
}

void add_output(CLI::App* sub, Invocation& inv) {
  sub->add_option("-o,--output", inv.output, "output file (standard output when omitted)");
}

void add_rel(CLI::App* sub, Invocation& inv, const std::string& help = "relative subcomplex file") {
  sub->add_option("--rel", inv.rel, help);
}

void build(CLI::App& app, Invocation& inv) {
  app.require_subcommand(0, 1);

  auto* gen = subcommand(app, inv, "generate", "write a bundled complex", cmd_generate);
  gen->add_option("family", inv.family, "family name")->required();
  gen->add_option("--params", inv.params, "integer parameters, comma separated");
  gen->add_option("--seed", inv.seed, "permute vertex labels with this seed");
  gen->add_option("--of", inv.factors, "factor family for product/cone, e.g. circle:3");
  add_output(gen, inv);

  auto* chi = subcommand(app, inv, "chi", "relative Euler characteristic", cmd_chi);
  add_input(chi, inv);
  add_rel(chi, inv);

  auto* match = subcommand(app, inv, "match", "complete matching or Hall certificate", cmd_match);
  add_input(match, inv);
  add_rel(match, inv);
  add_output(match, inv);
  match->add_option("--method", inv.method, "auto, hall or acyclic")
      ->check(CLI::IsMember({"auto", "hall", "acyclic"}));
  match->add_option("--field", inv.field, "q or f2 (acyclic method)")
      ->check(CLI::IsMember({"q", "f2"}));

  auto* en = subcommand(app, inv, "enumerate", "count complete matchings", cmd_enumerate);
  add_input(en, inv);
  add_rel(en, inv);
  add_output(en, inv);
  en->add_option("--limit", inv.limit, "matchings to list");
  en->add_option("--bound", inv.bound, "largest admissible number of cells");

  auto* hom = subcommand(app, inv, "homology", "relative Betti numbers", cmd_homology);
  add_input(hom, inv);
  add_rel(hom, inv);
  add_output(hom, inv);
  hom->add_option("--field", inv.field, "q or f2")->check(CLI::IsMember({"q", "f2"}));
  hom->add_flag("--filtration", inv.filtration, "emit the acyclic filtration instead");

  auto* sub = subcommand(app, inv, "subdivide", "barycentric subdivision", cmd_subdivide);
  add_input(sub, inv);
  add_rel(sub, inv, "relative subcomplex of the matching to propagate");
  add_output(sub, inv);
  sub->add_option("--rounds", inv.rounds, "number of barycentric rounds");
  sub->add_option("--map-out", inv.map_out, "write the carrier map here");
  sub->add_option("--propagate", inv.propagate, "matching to carry over");
  sub->add_option("--matching-out", inv.matching_out, "write the propagated matching here");

  auto* flow = subcommand(app, inv, "flow", "matching from a transverse constant field", cmd_flow);
  add_input(flow, inv);
  add_output(flow, inv);
  flow->add_option("--field", inv.flow_field, "direction as p/q,p/q,...")->required();
  flow->add_option("--base", inv.base_rule, "lowest or random:SEED");
  flow->add_option("--structure-out", inv.structure_out, "write the d/u structure here");

  auto* orb = subcommand(app, inv, "orbits", "cyclic orbit or collapse order", cmd_orbits);
  add_input(orb, inv);
  orb->add_option("matching", inv.second_input, "matching file")->required();
  add_rel(orb, inv, "relative subcomplex (defaults to the matching's relative_to)");
  add_output(orb, inv);

  auto* val = subcommand(app, inv, "validate", "check a matching", cmd_validate);
  add_input(val, inv);
  val->add_option("matching", inv.second_input, "matching file")->required();
  add_rel(val, inv, "relative subcomplex (defaults to the matching's relative_to)");
  add_output(val, inv);

  auto* pipe = app.add_subcommand("pipeline", "composite constructions");
  pipe->require_subcommand(1);
  auto* sphere = subcommand(*pipe, inv, "sphere", "odd-dimensional homology sphere",
                            cmd_pipeline_sphere);
  add_input(sphere, inv);
  add_output(sphere, inv);
  auto* loop = subcommand(*pipe, inv, "loop", "dual loop plus acyclic remainder", cmd_pipeline_loop);
  add_input(loop, inv);
  add_output(loop, inv);
  loop->add_option("--loop", inv.loop, "dual loop file")->required();
  loop->add_option("--base", inv.rel, "base subcomplex file");
  loop->add_option("--circle", inv.circle, "circle subcomplex file, or auto");
  loop->add_option("--budget", inv.budget, "search budget for --circle auto");

  auto* dual = app.add_subcommand("dualloop", "dual loop tools");
  dual->require_subcommand(1);
  auto* find = subcommand(*dual, inv, "find", "search for a dual loop", cmd_dualloop_find);
  add_input(find, inv);
  add_output(find, inv);
  find->add_option("--betti", inv.betti, "Betti numbers the complement must have");
  find->add_flag("--acyclic-rel", inv.acyclic_rel, "require H(X, complement) = 0");
  find->add_option("--budget", inv.budget, "search step budget");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Invocation inv(out, err);
  CLI::App app{"Complete matchings of cells on finite complexes", "cellmatch"};
  bool show_version = false, show_formats = false;
  app.add_flag("--version", show_version, "print version information");
  app.add_flag("--formats", show_formats, "print supported formats and commands");
  build(app, inv);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return exit_ok;
    }
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }

  if (show_version) {
    out << io::dump(json{{"name", "cellmatch"}, {"version", version}});
    return exit_ok;
  }
  if (show_formats) {
    out << io::dump(capabilities());
    return exit_ok;
  }
  if (!inv.action) {
    err << app.help();
    return exit_usage;
  }

  try {
    return inv.action(inv);
  } catch (const NonAcyclicError& e) {
    err << "error: " << e.what() << "\n";
    return exit_precondition;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::invalid_input ? exit_usage : exit_precondition;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
}

}  // namespace cellmatch::cli
