#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "mtss/edits.hpp"
#include "mtss/evalx.hpp"
#include "mtss/parser.hpp"
#include "mtss/render.hpp"
#include "mtss/stats.hpp"
#include "mtss/timeline.hpp"
#include "mtss/validator.hpp"

namespace mtss::cli {

Environment environment_from_process() {
  Environment env;
  if (const char* v = std::getenv("MTSS_STRICT")) env.strict = std::string_view(v) == "1";
  return env;
}

namespace {

struct Io {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

std::optional<std::string> read_input(const std::string& path, Io& io) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(io.in), std::istreambuf_iterator<char>());
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    io.err << "mtss: cannot read " << path << "\n";
    return std::nullopt;
  }
  return std::string(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
}

bool write_file(const std::string& path, const std::string& text, Io& io) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file || !(file << text)) {
    io.err << "mtss: cannot write " << path << "\n";
    return false;
  }
  return true;
}

// Reads and parses a document; on failure reports and returns the exit code.
struct Loaded {
  std::optional<Script> script;
  std::string text;
  int code = kSuccess;
};

Loaded load(const std::string& path, Io& io) {
  Loaded l;
  auto text = read_input(path, io);
  if (!text) {
    l.code = kUsage;
    return l;
  }
  l.text = std::move(*text);
  auto parsed = parse_document(l.text);
  if (!parsed) {
    for (const auto& d : parsed.error()) io.err << format_diagnostic(d, path == "-" ? "<stdin>" : path) << "\n";
    l.code = kParseFailure;
    return l;
  }
  l.script = std::move(parsed.value());
  return l;
}

void report_validation(const DiagnosticSet& set, Io& io) {
  for (const auto& d : set.items) io.err << format_diagnostic_text(d) << "\n";
}

int cmd_validate(const std::string& path, const std::string& format, bool strict, Io& io) {
  auto loaded = load(path, io);
  if (!loaded.script) return loaded.code;
  auto diags = validate(*loaded.script);
  if (strict) diags = promote_warnings(std::move(diags));
  for (const auto& d : diags.items)
    io.out << (format == "lines" ? format_diagnostic_line(d) : format_diagnostic_text(d)) << "\n";
  io.err << diags.error_count << " error(s), " << diags.warning_count << " warning(s)\n";
  return diags.error_count > 0 ? kFindings : kSuccess;
}

int cmd_fmt(const std::string& path, bool check, bool to_stdout, Io& io) {
  auto loaded = load(path, io);
  if (!loaded.script) return loaded.code;
  const auto canonical = serialize(*loaded.script);
  if (check) {
    if (canonical != loaded.text) {
      io.err << "would reformat " << path << "\n";
      return kFindings;
    }
    return kSuccess;
  }
  if (to_stdout || path == "-") {
    io.out << canonical;
    return kSuccess;
  }
  if (canonical == loaded.text) return kSuccess;
  return write_file(path, canonical, io) ? kSuccess : kUsage;
}

int cmd_render(const std::string& path, bool shot_prompts, bool no_expand, Io& io) {
  auto loaded = load(path, io);
  if (!loaded.script) return loaded.code;
  if (shot_prompts) {
    auto prompts = render_shot_prompts(*loaded.script);
    if (!prompts) {
      report_validation(prompts.error().diagnostics, io);
      return kFindings;
    }
    io.out << print_value(to_value(*prompts)) << "\n";
    return kSuccess;
  }
  auto text = render_monolithic(*loaded.script, !no_expand);
  if (!text) {
    report_validation(text.error().diagnostics, io);
    return kFindings;
  }
  io.out << *text << "\n";
  return kSuccess;
}

int cmd_query(const std::string& path, std::optional<double> at, bool show_boundaries, bool infer, Io& io) {
  auto loaded = load(path, io);
  if (!loaded.script) return loaded.code;
  const auto& script = *loaded.script;
  if (at) {
    const auto index = build_index(script);
    const Millis t = from_seconds(*at);
    for (const auto& id : index.shots_active_at(t)) io.out << "shot\t" << id << "\n";
    for (const auto& id : index.events_active_at(t)) io.out << "event\t" << id << "\n";
  }
  if (show_boundaries) {
    auto cuts = boundaries(script);
    if (!cuts) {
      io.err << "mtss: script has no shots\n";
      return kFindings;
    }
    for (const auto t : *cuts) io.out << format_seconds(t) << "\n";
  }
  if (infer) {
    for (const auto& [shot, events] : infer_active_events(canonicalize(script))) {
      io.out << shot << "\t";
      for (std::size_t i = 0; i < events.size(); ++i) io.out << (i ? " " : "") << events[i];
      io.out << "\n";
    }
  }
  return kSuccess;
}

int cmd_edit(const std::string& path, const std::string& edit_path, const std::string& output, bool in_place,
             Io& io) {
  auto loaded = load(path, io);
  if (!loaded.script) return loaded.code;
  auto edit_text = read_input(edit_path, io);
  if (!edit_text) return kUsage;
  auto edits = parse_edit_script(*edit_text);
  if (!edits) {
    for (const auto& d : edits.error()) io.err << format_diagnostic(d, edit_path) << "\n";
    return kParseFailure;
  }
  Script current = *loaded.script;
  auto report = Value::array();
  for (std::size_t i = 0; i < edits->size(); ++i) {
    const auto& edit = (*edits)[i];
    auto result = mtss::apply(current, edit);
    if (!result) {
      const auto& e = result.error();
      io.err << edit_path << ": edit " << (i + 1) << " (" << edit_name(edit) << ") rejected: " << kind_name(e.kind)
             << ": " << e.message << "\n";
      for (const auto& p : e.paths) io.err << "  " << p << "\n";
      return kFindings;
    }
    auto record = Value::object();
    record.set("edit", to_value(edit));
    record.set("footprint", to_value(result->footprint));
    report.push(std::move(record));
    current = std::move(result->script);
  }
  io.out << print_value(report) << "\n";
  const auto text = serialize(current);
  if (!output.empty()) return write_file(output, text, io) ? kSuccess : kUsage;
  if (in_place && path != "-") return write_file(path, text, io) ? kSuccess : kUsage;
  io.err << "mtss: dry run, pass --output or --in-place to keep the result\n";
  return kSuccess;
}

int cmd_eval(const std::string& cand_path, const std::string& gold_path, std::optional<double> min_f1, double penalty,
             const std::string& format, Io& io) {
  auto gold = load(gold_path, io);
  if (!gold.script) return gold.code;
  auto cand = load(cand_path, io);
  if (!cand.script) return cand.code;
  EvalConfig config;
  config.unmatched_penalty = penalty;
  auto report = evaluate(*gold.script, *cand.script, config);
  if (!report) {
    io.err << "mtss: " << report.error().message << "\n";
    return kUsage;
  }
  if (format == "json") io.out << print_value(to_value(*report)) << "\n";
  else io.out << format_eval_table(*report);
  if (min_f1) {
    const double worst = std::min({report->shots.f1, report->entities.f1, report->events.f1});
    if (worst < *min_f1) {
      io.err << "mtss: F1 " << worst << " below --min-f1 " << *min_f1 << "\n";
      return kFindings;
    }
  }
  return kSuccess;
}

int cmd_stats(const std::string& path, Io& io) {
  auto loaded = load(path, io);
  if (!loaded.script) return loaded.code;
  io.out << format_stats(compute_stats(*loaded.script));
  return kSuccess;
}

int cmd_explain(const std::string& code, Io& io) {
  auto info = explain_rule(code);
  if (!info) {
    io.err << "mtss: unknown rule code " << code << "\n";
    return kUsage;
  }
  io.out << info->code << "\t" << severity_name(info->severity) << "\t" << info->title << "\n"
         << info->description << "\n"
         << "link: " << info->anchor << "\n";
  return kSuccess;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
             const Environment& env) {
  Io io{in, out, err};
  CLI::App app{"Multi-Stream Scene Script toolkit", "mtss"};
  app.require_subcommand(1);

  std::string file, format = "text", edit_path, output, gold, code;
  bool strict = false, check = false, to_stdout = false, monolithic = false, shot_prompts = false, no_expand = false;
  bool show_boundaries = false, infer = false, in_place = false;
  std::optional<double> at, min_f1;
  double penalty = kDefaultUnmatchedPenalty;

  auto* validate_cmd = app.add_subcommand("validate", "lint a script");
  validate_cmd->add_option("file", file, "script path or - for stdin")->required();
  validate_cmd->add_option("--format", format, "text or lines")->check(CLI::IsMember({"text", "lines"}));
  validate_cmd->add_flag("--strict", strict, "treat warnings as errors");

  auto* fmt_cmd = app.add_subcommand("fmt", "rewrite a script in canonical form");
  fmt_cmd->add_option("file", file, "script path or - for stdin")->required();
  fmt_cmd->add_flag("--check", check, "exit 1 if the file is not canonical, write nothing");
  fmt_cmd->add_flag("--stdout", to_stdout, "print instead of rewriting the file");

  auto* render_cmd = app.add_subcommand("render", "flatten a script to text");
  render_cmd->add_option("file", file, "script path or - for stdin")->required();
  auto* mono = render_cmd->add_flag("--monolithic", monolithic, "single narrative paragraph");
  auto* prompts = render_cmd->add_flag("--shot-prompts", shot_prompts, "one prompt record per shot");
  mono->excludes(prompts);
  render_cmd->add_flag("--no-expand", no_expand, "monolithic: skip first-mention appearance expansion");

  auto* query_cmd = app.add_subcommand("query", "temporal queries");
  query_cmd->add_option("file", file, "script path or - for stdin")->required();
  query_cmd->add_option("--at", at, "list shots and events active at this time (seconds)");
  query_cmd->add_flag("--boundaries", show_boundaries, "list interior shot boundaries");
  query_cmd->add_flag("--infer-active", infer, "list active events inferred from time ranges");

  auto* edit_cmd = app.add_subcommand("edit", "apply an edit script and print footprints");
  edit_cmd->add_option("file", file, "script path or - for stdin")->required();
  edit_cmd->add_option("--apply", edit_path, "edit script, one record per line")->required();
  auto* out_opt = edit_cmd->add_option("--output,-o", output, "write the edited script here");
  auto* inplace_opt = edit_cmd->add_flag("--in-place", in_place, "rewrite the input file");
  out_opt->excludes(inplace_opt);

  auto* eval_cmd = app.add_subcommand("eval", "score a candidate script against a gold script");
  eval_cmd->add_option("candidate", file, "candidate script path")->required();
  eval_cmd->add_option("--gold", gold, "gold script path")->required();
  eval_cmd->add_option("--min-f1", min_f1, "exit 1 if any stream F1 is below this");
  eval_cmd->add_option("--penalty", penalty, "seconds charged per unmatched boundary")->check(CLI::NonNegativeNumber);
  eval_cmd->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* stats_cmd = app.add_subcommand("stats", "counts, redundancy and edit footprint figures");
  stats_cmd->add_option("file", file, "script path or - for stdin")->required();

  auto* explain_cmd = app.add_subcommand("explain", "describe a lint rule");
  explain_cmd->add_option("code", code, "rule code, e.g. E001")->required();

  std::vector<std::string> argv_storage{"mtss"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "mtss: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  if (validate_cmd->parsed()) return cmd_validate(file, format, strict || env.strict, io);
  if (fmt_cmd->parsed()) return cmd_fmt(file, check, to_stdout, io);
  if (render_cmd->parsed()) {
    if (!monolithic && !shot_prompts) {
      err << "mtss: render needs --monolithic or --shot-prompts\n" << render_cmd->help();
      return kUsage;
    }
    return cmd_render(file, shot_prompts, no_expand, io);
  }
  if (query_cmd->parsed()) {
    if (!at && !show_boundaries && !infer) {
      err << "mtss: query needs --at, --boundaries or --infer-active\n" << query_cmd->help();
      return kUsage;
    }
    return cmd_query(file, at, show_boundaries, infer, io);
  }
  if (edit_cmd->parsed()) return cmd_edit(file, edit_path, output, in_place, io);
  if (eval_cmd->parsed()) return cmd_eval(file, gold, min_f1, penalty, format, io);
  if (stats_cmd->parsed()) return cmd_stats(file, io);
  if (explain_cmd->parsed()) return cmd_explain(code, io);
  return kUsage;
}

}  // namespace mtss::cli
