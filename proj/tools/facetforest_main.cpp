// facetforest: facet ideals, simplicial trees, vertex covers, and exact
// Cohen-Macaulay / sliding-depth checks from the command line.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "facetforest/covers.hpp"
#include "facetforest/forest.hpp"
#include "facetforest/harness.hpp"
#include "facetforest/homology.hpp"
#include "facetforest/koszul.hpp"
#include "facetforest/parallel.hpp"
#include "facetforest/textio.hpp"

namespace ff = facetforest;
using nlohmann::json;

namespace {

constexpr const char* kSchema = "facetforest/1";

enum ExitCode { kOk = 0, kNegative = 1, kUsage = 2, kResource = 3 };

struct InputOptions {
  std::string path;
  std::string kind;  // "", "complex", "ideal"
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ff::MalformedInputError("cannot open input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

/// "complex" or "ideal": explicit --kind wins, then the extension, then the
/// subcommand's natural kind.
std::string resolve_kind(const InputOptions& in, const std::string& natural) {
  if (!in.kind.empty()) return in.kind;
  if (ends_with(in.path, ".cx")) return "complex";
  if (ends_with(in.path, ".id")) return "ideal";
  return natural;
}

/// Bridge used by the analysis commands: an ideal is analyzed through the
/// complex of its generator supports over its full declared universe, so
/// ring-level answers (depth, dim) keep every declared variable.
ff::SimplicialComplex complex_of_ideal(const ff::MonomialIdeal& ideal) {
  return ff::SimplicialComplex(ideal.universe(), ideal.generator_masks());
}

ff::SimplicialComplex load_complex(const InputOptions& in, const std::string& natural) {
  auto text = read_input(in.path);
  if (resolve_kind(in, natural) == "ideal") return complex_of_ideal(ff::parse_ideal(text));
  return ff::parse_complex(text);
}

ff::MonomialIdeal load_ideal(const InputOptions& in, const std::string& natural) {
  auto text = read_input(in.path);
  if (resolve_kind(in, natural) == "complex") return ff::facet_ideal(ff::parse_complex(text));
  return ff::parse_ideal(text);
}

json names_json(const ff::VertexSet& s) { return json(s.names()); }

json sets_json(const std::vector<ff::VertexSet>& sets) {
  json out = json::array();
  for (const auto& s : sets) out.push_back(names_json(s));
  return out;
}

void emit(const json& doc, const std::string& format) {
  if (format == "json") {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  // Text rendering: one "key: value" line per top-level field.
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() == "schema") continue;
    std::cout << it.key() << ": " << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
  }
}

json tree_certificate_json(const ff::TreeCertificate& cert) {
  json c;
  if (cert.tree) {
    json order = json::array();
    for (const auto& f : cert.leaf_order) order.push_back(names_json(f));
    c["leaf_order"] = order;
    return c;
  }
  c["failing_subcomplex"] = sets_json(cert.failing_subcomplex->facets());
  json rejections = json::array();
  for (const auto& rej : cert.rejections) {
    json entry;
    entry["facet"] = names_json(rej.facet);
    json against = json::array();
    for (const auto& a : rej.against) {
      against.push_back({{"candidate", names_json(a.candidate)},
                         {"blocker", names_json(a.blocker)},
                         {"intersection_with_blocker", names_json(a.facet_blocker_intersection)},
                         {"intersection_with_candidate", names_json(a.facet_candidate_intersection)}});
    }
    entry["not_dominated_by"] = against;
    rejections.push_back(entry);
  }
  c["leaf_rejections"] = rejections;
  return c;
}

json depth_report_json(const ff::DepthReport& report, bool strongly) {
  json per = json::array();
  for (const auto& row : report.per_i) {
    json r{{"i", row.i}, {"nonzero", row.nonzero}};
    if (row.nonzero) {
      r["depth"] = *row.depth;
      r["generators"] = row.generators;
    } else {
      r["depth"] = nullptr;
    }
    r["bound"] = row.sliding_bound;
    r["pass"] = strongly ? row.cm_pass : row.sliding_pass;
    if (strongly) r["target"] = report.quotient_dim;
    per.push_back(r);
  }
  json doc{{"schema", kSchema},
           {"n", report.n},
           {"q", report.q},
           {"field", report.field.label()},
           {"quotient_dim", report.quotient_dim},
           {"per_i", per},
           {"sliding_depth", report.sliding_depth},
           {"box", report.box_top.exponents},
           {"stability_rounds", report.stability_rounds}};
  if (report.strongly_cm) doc["strongly_cm"] = *report.strongly_cm;
  return doc;
}

int run(int argc, char** argv) {
  CLI::App app{
      "facetforest: facet ideals of simplicial complexes, vertex covers and minimal primes,\n"
      "simplicial trees and forests, and exact Cohen-Macaulay / sliding-depth verdicts.\n"
      "Complex files (.cx): optional 'vertices: a,b,c' header, then one facet per line\n"
      "('a,b,c'); '#' comments. Ideal files (.id): one square-free monomial per line ('x*y').\n"
      "'-' reads stdin. Input kind is inferred from the extension and can be forced with\n"
      "--kind; analysis commands accept either kind through the facet-ideal dictionary."};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  std::string format = "json";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  int threads = ff::default_thread_count();
  app.add_option("--threads", threads, "Worker threads for enumeration-heavy commands");

  auto add_input = [](CLI::App* cmd, InputOptions& in) {
    cmd->add_option("input", in.path, "Input file, or - for stdin")->required();
    cmd->add_option("--kind", in.kind, "Force the input kind")
        ->check(CLI::IsMember({"complex", "ideal"}));
  };

  ff::KoszulCaps caps;
  bool caps_override = false;
  auto add_caps = [&](CLI::App* cmd) {
    cmd->add_option("--koszul-max-vars", caps.max_vars, "Variable cap for Koszul computations");
    cmd->add_option("--koszul-max-gens", caps.max_gens, "Generator cap for Koszul computations");
    cmd->add_option("--koszul-max-box", caps.max_box, "Degree-box size cap");
    cmd->add_flag("--force-caps", caps_override, "Proceed past the caps (prints a warning)");
  };

  // info ----------------------------------------------------------------
  auto* cmd_info = app.add_subcommand("info", "Facets, dimension, purity, components");
  InputOptions in_info;
  add_input(cmd_info, in_info);

  // convert -------------------------------------------------------------
  auto* cmd_convert = app.add_subcommand("convert", "Translate between complexes and ideals");
  InputOptions in_convert;
  add_input(cmd_convert, in_convert);
  std::string convert_to;
  cmd_convert->add_option("--to", convert_to, "Target of the translation")
      ->required()
      ->check(CLI::IsMember({"facet-ideal", "nonface-ideal", "facet-complex", "nonface-complex"}));

  // covers / primes -------------------------------------------------------
  auto* cmd_covers = app.add_subcommand("covers", "Minimal vertex covers");
  InputOptions in_covers;
  add_input(cmd_covers, in_covers);

  auto* cmd_primes = app.add_subcommand("primes", "Minimal primes of the ideal");
  InputOptions in_primes;
  add_input(cmd_primes, in_primes);

  // dim -------------------------------------------------------------------
  auto* cmd_dim = app.add_subcommand("dim", "Height and dimension of the quotient ring");
  InputOptions in_dim;
  add_input(cmd_dim, in_dim);

  // is-tree -----------------------------------------------------------------
  auto* cmd_tree = app.add_subcommand("is-tree", "Definitional tree check with certificate");
  InputOptions in_tree;
  add_input(cmd_tree, in_tree);
  int facet_bound = ff::SubcomplexRange::kDefaultSubcomplexBound;
  cmd_tree->add_option("--facet-bound", facet_bound, "Subcomplex enumeration bound");
  std::string assert_tree;
  cmd_tree->add_option("--assert", assert_tree, "Exit 1 on a negative verdict")
      ->check(CLI::IsMember({"tree"}));

  // cm / depth ---------------------------------------------------------------
  std::string field_label = "q";
  auto* cmd_cm = app.add_subcommand("cm", "Cohen-Macaulayness over a field");
  InputOptions in_cm;
  add_input(cmd_cm, in_cm);
  cmd_cm->add_option("--field", field_label, "q, a prime, or p:<prime>")->capture_default_str();
  std::string assert_cm;
  cmd_cm->add_option("--assert", assert_cm, "Exit 1 on a negative verdict")
      ->check(CLI::IsMember({"cm"}));

  auto* cmd_depth = app.add_subcommand("depth", "Depth of the quotient ring");
  InputOptions in_depth;
  add_input(cmd_depth, in_depth);
  cmd_depth->add_option("--field", field_label, "q, a prime, or p:<prime>");

  // sliding-depth / strongly-cm ---------------------------------------------
  auto* cmd_slide = app.add_subcommand("sliding-depth", "Sliding depth of the Koszul homology");
  InputOptions in_slide;
  add_input(cmd_slide, in_slide);
  cmd_slide->add_option("--field", field_label, "q, a prime, or p:<prime>");
  add_caps(cmd_slide);
  std::string assert_slide;
  cmd_slide->add_option("--assert", assert_slide, "Exit 1 on a negative verdict")
      ->check(CLI::IsMember({"sliding-depth"}));

  auto* cmd_scm = app.add_subcommand("strongly-cm", "Strong Cohen-Macaulayness of the ideal");
  InputOptions in_scm;
  add_input(cmd_scm, in_scm);
  cmd_scm->add_option("--field", field_label, "q, a prime, or p:<prime>");
  add_caps(cmd_scm);
  std::string assert_scm;
  cmd_scm->add_option("--assert", assert_scm, "Exit 1 on a negative verdict")
      ->check(CLI::IsMember({"strongly-cm"}));

  // verify --------------------------------------------------------------------
  auto* cmd_verify = app.add_subcommand("verify", "Run the executable property suite");
  std::string props_arg;
  cmd_verify->add_option("--props", props_arg, "Comma-separated property ids (default: all)");
  int verify_vertices = 5;
  cmd_verify->add_option("--vertices", verify_vertices, "Exhaustive vertex bound")
      ->capture_default_str();
  int verify_max_facets = 0;
  cmd_verify->add_option("--max-facets", verify_max_facets, "Facet bound (0 = none)");
  std::int64_t verify_random = 0;
  cmd_verify->add_option("--random", verify_random, "Random instances instead of enumeration");
  std::uint64_t verify_seed = 1;
  cmd_verify->add_option("--seed", verify_seed, "Random scope seed");
  add_caps(cmd_verify);

  CLI11_PARSE(app, argc, argv);

  if (caps_override) {
    caps.enforce = false;
    std::cerr << "warning: computation caps disabled; large instances may be very slow\n";
  }

  if (cmd_info->parsed()) {
    auto c = load_complex(in_info, "complex");
    json doc{{"schema", kSchema},
             {"vertices", c.universe()->names()},
             {"facets", sets_json(c.facets())},
             {"facet_count", c.facet_count()},
             {"dim", c.dim()},
             {"pure", c.is_pure()},
             {"components", ff::connected_component_count(c)}};
    emit(doc, format);
    return kOk;
  }

  if (cmd_convert->parsed()) {
    auto text = read_input(in_convert.path);
    bool to_complex = convert_to == "facet-complex" || convert_to == "nonface-complex";
    std::string kind = resolve_kind(in_convert, to_complex ? "ideal" : "complex");
    if (to_complex && kind != "ideal")
      throw ff::MalformedInputError("convert --to " + convert_to + " expects an ideal input");
    if (!to_complex && kind != "complex")
      throw ff::MalformedInputError("convert --to " + convert_to + " expects a complex input");
    if (to_complex) {
      auto ideal = ff::parse_ideal(text);
      std::cout << ff::serialize(convert_to == "facet-complex" ? ff::facet_complex(ideal)
                                                               : ff::nonface_complex(ideal));
    } else {
      auto complex = ff::parse_complex(text);
      std::cout << ff::serialize(convert_to == "facet-ideal" ? ff::facet_ideal(complex)
                                                             : ff::nonface_ideal(complex));
    }
    return kOk;
  }

  if (cmd_covers->parsed()) {
    auto c = load_complex(in_covers, "complex");
    auto covers = ff::minimal_vertex_covers(c);
    json cover_list = json::array();
    for (const auto& a : covers) cover_list.push_back(names_json(a));
    json doc{{"schema", kSchema},
             {"covers", cover_list},
             {"covering_number", ff::covering_number(c)},
             {"unmixed", ff::is_unmixed(c)}};
    emit(doc, format);
    return kOk;
  }

  if (cmd_primes->parsed()) {
    auto ideal = load_ideal(in_primes, "ideal");
    json primes = json::array();
    for (const auto& p : ff::minimal_primes(ideal)) primes.push_back(names_json(p));
    json doc{{"schema", kSchema},
             {"primes", primes},
             {"height", ff::height(ideal)},
             {"unmixed", ff::is_unmixed(ff::facet_complex(ideal))}};
    emit(doc, format);
    return kOk;
  }

  if (cmd_dim->parsed()) {
    auto ideal = load_ideal(in_dim, "ideal");
    json doc{{"schema", kSchema},
             {"n", ideal.universe()->size()},
             {"height", ff::height(ideal)},
             {"dim", ff::dim_quotient(ideal)}};
    emit(doc, format);
    return kOk;
  }

  if (cmd_tree->parsed()) {
    auto c = load_complex(in_tree, "complex");
    auto cert = ff::is_tree_certified(c, {facet_bound});
    json doc{{"schema", kSchema}, {"tree", cert.tree}, {"certificate", tree_certificate_json(cert)}};
    emit(doc, format);
    return (!cert.tree && assert_tree == "tree") ? kNegative : kOk;
  }

  if (cmd_cm->parsed() || cmd_depth->parsed()) {
    const auto& in = cmd_cm->parsed() ? in_cm : in_depth;
    auto c = load_complex(in, "complex");
    auto field = ff::FieldSpec::parse(field_label);
    auto report = ff::is_CM(c, field);
    json doc{{"schema", kSchema},
             {"field", field.label()},
             {"cm", report.cm},
             {"depth", report.depth},
             {"dim", report.dim}};
    if (cmd_cm->parsed()) {
      doc["witness"] = report.witness ? json{{"face", names_json(report.witness->face)},
                                             {"homology_index", report.witness->homology_index}}
                                      : json(nullptr);
    }
    emit(doc, format);
    return (!report.cm && assert_cm == "cm") ? kNegative : kOk;
  }

  if (cmd_slide->parsed() || cmd_scm->parsed()) {
    bool strongly = cmd_scm->parsed();
    auto ideal = load_ideal(strongly ? in_scm : in_slide, "ideal");
    auto field = ff::FieldSpec::parse(field_label);
    auto report = strongly ? ff::strongly_cm_check(ideal, field, caps)
                           : ff::sliding_depth_check(ideal, field, caps);
    emit(depth_report_json(report, strongly), format);
    bool verdict = strongly ? report.strongly_cm.value_or(false) : report.sliding_depth;
    bool asserted = strongly ? assert_scm == "strongly-cm" : assert_slide == "sliding-depth";
    return (!verdict && asserted) ? kNegative : kOk;
  }

  if (cmd_verify->parsed()) {
    std::vector<ff::PropertyId> props;
    if (props_arg.empty()) {
      props = ff::all_properties();
    } else {
      std::stringstream ss(props_arg);
      std::string piece;
      while (std::getline(ss, piece, ',')) {
        auto id = ff::parse_property_id(piece);
        if (!id) throw ff::MalformedInputError("unknown property '" + piece + "'");
        props.push_back(*id);
      }
    }
    ff::VerifyScope scope;
    scope.v_max = verify_vertices;
    scope.q_max = verify_max_facets;
    scope.threads = threads;
    scope.caps = caps;
    if (verify_random > 0) scope.random = ff::RandomScope{verify_random, verify_seed, 6, 4};

    bool all_passed = true;
    json prop_docs;
    for (auto id : props) {
      auto report = ff::verify_property(id, scope);
      all_passed = all_passed && report.ok();
      json failures = json::array();
      for (const auto& f : report.failures) {
        json fail{{"instance", f.instance}, {"detail", f.detail}};
        if (f.localization) fail["localization"] = *f.localization;
        failures.push_back(fail);
      }
      prop_docs[ff::property_name(id)] = json{{"cases", report.cases},
                                              {"passed", report.passed},
                                              {"failed", report.failed},
                                              {"skipped", report.skipped},
                                              {"failures", failures}};
    }
    json doc{{"schema", kSchema}, {"props", prop_docs}, {"all_passed", all_passed}};
    emit(doc, format);
    return all_passed ? kOk : kNegative;
  }

  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ff::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ff::ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResource;
  } catch (const ff::BoxUnstableError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResource;
  } catch (const ff::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
