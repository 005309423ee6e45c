#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "wordlab/report.hpp"

namespace {

using namespace wordlab;

constexpr std::size_t kGenerateBudget = std::size_t{1} << 26;

StabilizationPolicy parse_policy(const std::string& text) {
  std::array<std::size_t, 3> values{};
  std::size_t pos = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    std::size_t end = text.find(',', pos);
    bool last = i == 2;
    if (last != (end == std::string::npos))
      throw std::invalid_argument(
          "--policy expects three comma-separated integers: initial,growth,cap");
    if (end == std::string::npos) end = text.size();
    const char* first = text.data() + pos;
    const char* stop = text.data() + end;
    auto [ptr, ec] = std::from_chars(first, stop, values[i]);
    if (ec != std::errc{} || ptr != stop || first == stop)
      throw std::invalid_argument("--policy expects positive integers");
    pos = end + 1;
  }
  StabilizationPolicy policy{values[0], values[1], values[2]};
  if (policy.initial < 1 || policy.growth < 2 || policy.cap < policy.initial)
    throw std::invalid_argument(
        "--policy needs initial >= 1, growth >= 2, cap >= initial");
  return policy;
}

WordSource require_source(const std::string& descriptor) {
  if (descriptor.empty())
    throw std::invalid_argument("--source is required for this command");
  return WordSource::parse(descriptor);
}

void write_output(const RunConfig& cfg, const std::string& rendered) {
  if (cfg.out_path.empty()) {
    std::cout << rendered;
    return;
  }
  std::ofstream out(cfg.out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + cfg.out_path);
  out << rendered;
  if (!out) throw std::runtime_error("cannot write output file " + cfg.out_path);
}

Verdict skipped_verdict(std::size_t max_len, const std::string& reason) {
  Verdict v;
  v.checked = {1, max_len};
  v.caveats.push_back("skipped: " + reason);
  return v;
}

int run_generate(const RunConfig& cfg, std::size_t length) {
  if (length > kGenerateBudget)
    throw std::invalid_argument("budget overflow: --length exceeds 2^26");
  WordSource src = require_source(cfg.source);
  FiniteWord word = src.prefix(length);
  OrderedJson extra;
  extra["length"] = length;
  if (cfg.format == "json")
    write_output(cfg, render_json_report(cfg, extra, generate_payload(word)));
  else if (cfg.format == "csv")
    write_output(cfg, generate_csv(word));
  else
    write_output(cfg, generate_text(word));
  return 0;
}

int run_returns(const RunConfig& cfg, const std::string& target_text,
                bool all_lengths) {
  WordSource src = require_source(cfg.source);
  std::vector<ReturnQuery> queries;
  OrderedJson extra;
  if (!target_text.empty()) {
    FiniteWord v = FiniteWord::from_text(target_text, src.alphabet_size());
    if (v.empty()) throw std::invalid_argument("--target must be non-empty");
    auto policy = cfg.policy ? *cfg.policy : default_policy(v.size());
    queries.push_back({v, stabilized_abelian_returns(src, v, policy)});
    extra["target"] = target_text;
  } else if (all_lengths) {
    std::size_t cap = cfg.policy ? cfg.policy->cap : (std::size_t{1} << 20);
    if (cfg.max_factor_length > cap)
      throw std::invalid_argument(
          "--max exceeds the policy cap; no factor of that length can be "
          "enumerated");
    FiniteWord enum_prefix = src.prefix(cap);
    for (std::size_t n = 1; n <= cfg.max_factor_length; ++n) {
      auto policy = cfg.policy ? *cfg.policy : default_policy(n);
      for (const ClassListing& cls : abelian_classes(enum_prefix, n))
        queries.push_back(
            {cls.representative,
             stabilized_abelian_returns(src, cls.representative, policy)});
    }
    extra["allLengths"] = true;
  } else {
    throw std::invalid_argument("returns needs --target or --all-lengths");
  }
  if (cfg.format == "json")
    write_output(cfg, render_json_report(cfg, extra, returns_payload(queries)));
  else if (cfg.format == "csv")
    write_output(cfg, returns_csv(queries));
  else
    write_output(cfg, returns_text(queries));
  return returns_exit_code(queries);
}

int run_lexarray(const RunConfig& cfg, const std::string& word_text,
                 std::size_t p, std::size_t q) {
  OrderedJson extra;
  LexArrayReport report = [&] {
    if (!word_text.empty()) {
      FiniteWord w = FiniteWord::from_text(word_text, 2);
      extra["word"] = word_text;
      return LexArrayReport{lex_array(w), is_balanced_jz(w), false};
    }
    if (p == 0 || q == 0)
      throw std::invalid_argument("lexarray needs --word or both --p and --q");
    extra["p"] = p;
    extra["q"] = q;
    LexArray array = balanced_orbit_array(p, q);
    bool balanced = is_balanced_jz(array.rows.front());
    return LexArrayReport{std::move(array), balanced, false};
  }();
  report.column_shift = column_shift_check(report.array);
  if (cfg.format == "json")
    write_output(cfg, render_json_report(cfg, extra, lexarray_payload(report)));
  else if (cfg.format == "csv")
    write_output(cfg, lexarray_csv(report));
  else
    write_output(cfg, lexarray_text(report));
  return 0;
}

int run_verify(const RunConfig& cfg, const std::string& theorem) {
  WordSource src = require_source(cfg.source);
  auto policy = cfg.policy ? *cfg.policy : default_policy(1);
  const bool all = theorem == "all";
  const bool binary = src.alphabet_size() == 2;
  auto want = [&](std::string_view name) { return all || theorem == name; };
  std::vector<NamedVerdict> verdicts;
  if (want("main"))
    verdicts.push_back(
        {"main",
         verify_sturmian_characterization(src, cfg.max_factor_length, policy)});
  if (want("singular"))
    verdicts.push_back(
        {"singular", verify_singular_theorem(src, cfg.max_factor_length, policy)});
  if (want("structure"))
    verdicts.push_back(
        {"structure", verify_return_structure(src, cfg.max_factor_length, policy)});
  if (want("periodicity")) {
    if (binary)
      verdicts.push_back(
          {"periodicity",
           verify_periodicity_lemma(src, cfg.max_factor_length, policy)});
    else if (all)
      verdicts.push_back(
          {"periodicity", skipped_verdict(cfg.max_factor_length,
                                          "source alphabet is not binary")});
    else
      throw std::invalid_argument(
          "periodicity check expects a binary source");
  }
  if (want("corollary-w")) {
    if (binary)
      verdicts.push_back(
          {"corollary-w", corollary_w_form_check(src.prefix(policy.cap))});
    else if (all)
      verdicts.push_back(
          {"corollary-w", skipped_verdict(cfg.max_factor_length,
                                          "source alphabet is not binary")});
    else
      throw std::invalid_argument(
          "corollary-w check expects a binary source");
  }
  OrderedJson extra;
  extra["theorem"] = theorem;
  if (cfg.format == "json")
    write_output(cfg, render_json_report(cfg, extra, verify_payload(verdicts)));
  else if (cfg.format == "csv")
    write_output(cfg, verify_csv(verdicts));
  else
    write_output(cfg, verify_text(verdicts));
  return verify_exit_code(verdicts);
}

}  // namespace

int main(int argc, char** argv) {
  auto started = std::chrono::steady_clock::now();
  CLI::App app{
      "word analysis tool: prefixes, abelian returns, lexicographic arrays, "
      "verdicts"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string source_text;
  std::string policy_text;
  std::string format = "json";
  std::string out_path;
  std::size_t max_len = 25;
  app.add_option("--source", source_text, "source descriptor");
  app.add_option("--max", max_len, "maximum factor length (default 25)");
  app.add_option("--policy", policy_text, "stabilization policy initial,growth,cap");
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--out", out_path, "output file (default stdout)");

  std::size_t gen_length = 0;
  auto* gen = app.add_subcommand("generate", "emit a prefix of the source");
  gen->add_option("--length", gen_length, "prefix length")->required();

  std::string target_text;
  bool all_lengths = false;
  auto* ret =
      app.add_subcommand("returns", "abelian returns with stabilization");
  ret->add_option("--target", target_text, "target factor");
  ret->add_flag("--all-lengths", all_lengths,
                "every abelian class up to --max");

  std::string word_text;
  std::size_t p = 0;
  std::size_t q = 0;
  auto* lex =
      app.add_subcommand("lexarray", "lexicographic array of a cyclic orbit");
  lex->add_option("--word", word_text, "orbit representative");
  lex->add_option("--p", p, "ones count of the balanced orbit");
  lex->add_option("--q", q, "word length of the balanced orbit");

  std::string theorem = "all";
  auto* ver = app.add_subcommand("verify", "run statement verifiers");
  ver->add_option("--theorem", theorem, "which statement to verify")
      ->check(CLI::IsMember(
          {"main", "singular", "structure", "periodicity", "corollary-w",
           "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  int exit_code = 0;
  try {
    RunConfig cfg;
    cfg.source = source_text;
    cfg.max_factor_length = max_len;
    if (!policy_text.empty()) cfg.policy = parse_policy(policy_text);
    cfg.format = format;
    cfg.out_path = out_path;
    if (gen->parsed()) {
      cfg.command = "generate";
      exit_code = run_generate(cfg, gen_length);
    } else if (ret->parsed()) {
      cfg.command = "returns";
      exit_code = run_returns(cfg, target_text, all_lengths);
    } else if (lex->parsed()) {
      cfg.command = "lexarray";
      exit_code = run_lexarray(cfg, word_text, p, q);
    } else {
      cfg.command = "verify";
      exit_code = run_verify(cfg, theorem);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - started)
                     .count();
  std::cerr << "duration_ms=" << elapsed << "\n";
  return exit_code;
}
