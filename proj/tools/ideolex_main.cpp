// Command line for the ideogram sentiment pipeline: build a character
// ontology from a training TSV, classify word lists, evaluate against gold
// labels and sweep the T/LVB/UVB parameter grid.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ideolex/classifier.hpp"
#include "ideolex/core.hpp"
#include "ideolex/evaluation.hpp"
#include "ideolex/io.hpp"
#include "ideolex/ontology.hpp"

namespace {

using namespace ideolex;

SentimentScheme resolve_scheme(const std::string& scheme_flag,
                               const std::string& file_text) {
  if (!scheme_flag.empty()) return parse_scheme(scheme_flag);
  if (auto s = scheme_from_header(file_text)) return *s;
  throw std::runtime_error(
      "no scheme: pass --scheme or add a '#scheme: c1,c2,...' line to the file");
}

std::vector<GoldLabeledWord> parse_gold_file(const std::string& text,
                                             const SentimentScheme& scheme) {
  // Gold files share the training TSV format: word<TAB>category.
  std::vector<GoldLabeledWord> gold;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto fields = detail::split(t, '\t');
    if (fields.size() != 2)
      throw parse_error("expected word<TAB>category", lineno);
    const std::size_t idx = scheme.index_of(detail::trim(fields[1]));
    if (idx == SentimentScheme::npos)
      throw parse_error("unknown category '" + fields[1] + "'", lineno);
    auto chars = utf8_decode(detail::trim(fields[0]));
    if (chars.empty()) throw parse_error("empty word", lineno);
    gold.push_back({std::move(chars), idx});
  }
  if (gold.empty()) throw parse_error("gold file contains no words");
  return gold;
}

std::string format_vector(const SentimentVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += detail::fmt_double(v[i]);
  }
  return out + ")";
}

std::string format_report(const EvalReport& rep, const SentimentScheme& scheme) {
  std::string out;
  out += "ideolex-eval v1\n";
  out += "total\t" + std::to_string(rep.total) + "\n";
  out += "computed\t" + std::to_string(rep.computed) + "\n";
  out += "correct\t" + std::to_string(rep.correct) + "\n";
  out += "tie_broken\t" + std::to_string(rep.tie_broken) + "\n";
  out += "precision\t" + detail::fmt_double(rep.precision) + "\n";
  out += "recall\t" + detail::fmt_double(rep.recall) + "\n";
  out += "f\t" + detail::fmt_double(rep.f) + "\n";
  out += "macro_f\t" + detail::fmt_double(rep.macro_f) + "\n";
  for (std::size_t i = 0; i < rep.per_category.size(); ++i) {
    const auto& c = rep.per_category[i];
    out += "category\t" + scheme.name(i) + "\tprecision\t" +
           detail::fmt_double(c.precision) + "\trecall\t" +
           detail::fmt_double(c.recall) + "\tf\t" + detail::fmt_double(c.f) + "\n";
  }
  return out;
}

// Grid spec: comma-separated name=start:step:end or name=v1|v2|... where
// name is T, LVB or UVB. All three must be present; a bare value is a
// singleton list. Rows come out T-major, then LVB, then UVB.
std::vector<BuilderParams> parse_grid(const std::string& spec) {
  std::vector<double> ts, lvbs, uvbs;
  for (const auto& part : detail::split(spec, ',')) {
    auto eq = part.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("grid: missing '=' in '" + part + "'");
    const std::string name = detail::trim(part.substr(0, eq));
    const std::string value = detail::trim(part.substr(eq + 1));
    std::vector<double> values;
    if (value.find('|') != std::string::npos) {
      for (const auto& v : detail::split(value, '|'))
        values.push_back(detail::parse_double(detail::trim(v), 0));
    } else if (value.find(':') != std::string::npos) {
      auto parts = detail::split(value, ':');
      if (parts.size() != 3)
        throw std::runtime_error("grid: range must be start:step:end");
      const double start = detail::parse_double(detail::trim(parts[0]), 0);
      const double step = detail::parse_double(detail::trim(parts[1]), 0);
      const double end = detail::parse_double(detail::trim(parts[2]), 0);
      if (step <= 0) throw std::runtime_error("grid: step must be positive");
      for (double v = start; v <= end + 1e-12; v += step) values.push_back(v);
    } else {
      values.push_back(detail::parse_double(value, 0));
    }
    if (name == "T") ts = values;
    else if (name == "LVB") lvbs = values;
    else if (name == "UVB") uvbs = values;
    else throw std::runtime_error("grid: unknown parameter '" + name + "'");
  }
  if (ts.empty() || lvbs.empty() || uvbs.empty())
    throw std::runtime_error("grid must specify T, LVB and UVB");
  std::vector<BuilderParams> grid;
  for (double t : ts)
    for (double l : lvbs)
      for (double u : uvbs) {
        BuilderParams p{static_cast<int>(t), l, u};
        p.validate();
        grid.push_back(p);
      }
  return grid;
}

std::string format_sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "T,LVB,UVB,precision,recall,f,macro_f\n";
  for (const auto& r : rows) {
    out += std::to_string(r.params.threshold) + "," +
           detail::fmt_double(r.params.lvb) + "," +
           detail::fmt_double(r.params.uvb) + "," +
           detail::fmt_double(r.report.precision) + "," +
           detail::fmt_double(r.report.recall) + "," +
           detail::fmt_double(r.report.f) + "," +
           detail::fmt_double(r.report.macro_f) + "\n";
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"ideogram-based Chinese sentiment word orientation"};
  app.require_subcommand(1);

  // build
  std::string train_path, neg_path, scheme_flag, out_path;
  BuilderParams params;
  auto* build = app.add_subcommand("build", "build a character ontology");
  build->add_option("--train", train_path, "training TSV (word<TAB>category)")
      ->required();
  build->add_option("--negations", neg_path, "negation characters, one per line");
  build->add_option("--scheme", scheme_flag, "comma-separated category names");
  build->add_option("--threshold", params.threshold, "support threshold T")
      ->default_val(1);
  build->add_option("--lvb", params.lvb, "lower variance bound")->default_val(0.0);
  build->add_option("--uvb", params.uvb, "upper variance bound")->default_val(1.0);
  build->add_option("--out", out_path, "output ontology path")->required();

  // classify
  std::string onto_path, input_path;
  auto* classify_cmd = app.add_subcommand("classify", "classify a word list");
  classify_cmd->add_option("--ontology", onto_path, "ontology file")->required();
  classify_cmd->add_option("--input", input_path, "word list, one word per line")
      ->required();
  classify_cmd->add_option("--out", out_path, "output TSV")->required();

  // eval
  std::string gold_path;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate against gold labels");
  eval_cmd->add_option("--ontology", onto_path, "ontology file")->required();
  eval_cmd->add_option("--gold", gold_path, "gold TSV (word<TAB>category)")
      ->required();
  eval_cmd->add_option("--out", out_path, "output report path")->required();

  // sweep
  std::string grid_spec;
  auto* sweep_cmd = app.add_subcommand("sweep", "parameter grid sweep");
  sweep_cmd->add_option("--train", train_path, "training TSV")->required();
  sweep_cmd->add_option("--negations", neg_path, "negation file");
  sweep_cmd->add_option("--scheme", scheme_flag, "comma-separated category names");
  sweep_cmd->add_option("--gold", gold_path, "gold TSV")->required();
  sweep_cmd
      ->add_option("--grid", grid_spec,
                   "e.g. T=1:1:8,LVB=0.3,UVB=0.65 or T=1|2|4,...")
      ->required();
  sweep_cmd->add_option("--out", out_path, "output CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  if (build->parsed()) {
    params.validate();
    const std::string train_text = read_file(train_path);
    const auto scheme = resolve_scheme(scheme_flag, train_text);
    const auto lexicon = parse_training_file(train_text, scheme);
    NegationSet negations;
    if (!neg_path.empty()) negations = parse_negation_file(read_file(neg_path));
    const auto onto = build_ontology(lexicon, params, negations);
    atomic_write_file(out_path, serialize_ontology(onto));
    std::cerr << "ontology: " << onto.entries.size() << " entries, "
              << onto.diagnostics.size() << " rejected\n";
  } else if (classify_cmd->parsed()) {
    const auto onto = parse_ontology(read_file(onto_path));
    std::istringstream in(read_file(input_path));
    std::string line, out;
    while (std::getline(in, line)) {
      const std::string word_text = detail::trim(line);
      if (word_text.empty()) {  // blank in, blank out: line counts stay equal
        out += "\n";
        continue;
      }
      out += word_text + "\t";
      const auto result = classify(utf8_decode(word_text), onto);
      if (result.is_computed()) {
        out += onto.scheme.name(result.orient().index) + "\t" +
               format_vector(result.vector()) + "\n";
      } else {
        out += std::string("UNCOMPUTABLE:") + to_string(result.reason()) + "\n";
      }
    }
    atomic_write_file(out_path, out);
  } else if (eval_cmd->parsed()) {
    const auto onto = parse_ontology(read_file(onto_path));
    const auto gold = parse_gold_file(read_file(gold_path), onto.scheme);
    const auto report = evaluate_against(onto, gold);
    atomic_write_file(out_path, format_report(report, onto.scheme));
  } else if (sweep_cmd->parsed()) {
    const std::string train_text = read_file(train_path);
    const auto scheme = resolve_scheme(scheme_flag, train_text);
    const auto lexicon = parse_training_file(train_text, scheme);
    NegationSet negations;
    if (!neg_path.empty()) negations = parse_negation_file(read_file(neg_path));
    const auto gold = parse_gold_file(read_file(gold_path), scheme);
    const auto rows = sweep(lexicon, gold, negations, parse_grid(grid_spec));
    atomic_write_file(out_path, format_sweep_csv(rows));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
