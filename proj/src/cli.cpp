#include "altlab/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "altlab/deciders.hpp"
#include "altlab/errors.hpp"
#include "altlab/oracle.hpp"

namespace altlab {

namespace {

struct CommonOpts {
  std::string format = "text";
  int max_monoid = kDefaultMonoidCap;
  int max_sets = 20000;
  double timeout_secs = 300.0;

  SaturationLimits limits() const { return SaturationLimits{max_sets, timeout_secs}; }
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--format", opts.format, "Output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--max-monoid", opts.max_monoid, "Monoid size cap");
  cmd->add_option("--max-sets", opts.max_sets, "Cap on maximal chain sets");
  cmd->add_option("--timeout-secs", opts.timeout_secs, "Saturation time budget");
}

struct LanguageInput {
  std::string regex;
  std::string alphabet;
  std::string dfa_path;
};

void add_language(CLI::App* cmd, LanguageInput& in, const std::string& suffix = "") {
  cmd->add_option("--regex" + suffix, in.regex, "Regular expression");
  cmd->add_option("--dfa" + suffix, in.dfa_path, "Path to a DFA file");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Dfa load_min_dfa(const LanguageInput& in, const std::string& alphabet) {
  const bool has_regex = !in.regex.empty();
  const bool has_dfa = !in.dfa_path.empty();
  if (has_regex == has_dfa)
    throw InputError("give exactly one input form per language: --regex or --dfa");
  if (has_regex) {
    if (alphabet.empty()) throw InputError("--regex requires --alphabet");
    RegexAst ast = parse_regex(in.regex, make_alphabet(alphabet));
    return regex_to_min_dfa(ast);
  }
  return minimize_dfa(parse_automaton(read_file(in.dfa_path)));
}

RecognizedLanguage load_language(const LanguageInput& in, const std::string& alphabet,
                                 const CommonOpts& opts) {
  return syntactic_morphism(load_min_dfa(in, alphabet), opts.max_monoid);
}

std::optional<AlphaSet> parse_subset(const std::string& subset, bool has_subset,
                                     const std::vector<char>& alphabet) {
  if (!has_subset) return std::nullopt;
  return alpha_set_from_string(subset, alphabet);
}

Chain parse_chain(const std::string& text, int monoid_size) {
  Chain chain;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      chain.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw InputError("invalid chain element '" + tok + "'");
    }
    if (chain.back() < 0 || chain.back() >= monoid_size)
      throw InputError("chain element " + tok + " out of range");
  }
  if (chain.size() < 2 || chain.size() > 3)
    throw InputError("--chain expects 2 or 3 comma-separated element ids");
  return chain;
}

void print_monoid_text(std::ostream& out, const RecognizedLanguage& lang) {
  const auto& m = *lang.morphism.target;
  out << "size: " << m.size << "\n";
  out << "unit: " << m.unit << "\n";
  out << "names:";
  for (Element e = 0; e < m.size; ++e) out << " " << e << "=" << m.name_of(e);
  out << "\n";
  out << "mult:\n";
  for (Element x = 0; x < m.size; ++x) {
    out << " ";
    for (Element y = 0; y < m.size; ++y) out << " " << m.mult(x, y);
    out << "\n";
  }
  out << "letters:";
  for (std::size_t a = 0; a < lang.morphism.alphabet.size(); ++a)
    out << " " << lang.morphism.alphabet[a] << "->" << lang.morphism.letter_image[a];
  out << "\n";
  out << "accepting:";
  for (Element e : lang.accepting_elements()) out << " " << e;
  out << "\n";
  out << "order:";
  if (lang.order) {
    for (Element s = 0; s < m.size; ++s)
      for (Element t = 0; t < m.size; ++t)
        if (s != t && lang.order->leq(s, t)) out << " " << s << "<=" << t;
  }
  out << "\n";
}

void print_verdict_text(std::ostream& out, const std::string& label, const Verdict& v) {
  out << label << ": " << (v.yes ? "yes" : "no");
  if (!v.yes && v.violation) out << "  [" << v.violation->detail << "]";
  out << "\n";
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deciders for quantifier-alternation classes of regular languages"};
  app.require_subcommand(1);

  CommonOpts opts;
  LanguageInput lang_in, lang_in2;
  std::string alphabet;
  std::string subset;
  std::string logic = "sigma2";
  std::string chain_text;
  std::string word1, word2;
  int length = 2, rank = 1, level = 2, max_len = 6;
  long long budget = 1'000'000;

  auto* monoid_cmd = app.add_subcommand("monoid", "Dump the syntactic ordered monoid");
  add_language(monoid_cmd, lang_in);
  monoid_cmd->add_option("--alphabet", alphabet, "Declared alphabet for --regex");
  add_common(monoid_cmd, opts);

  auto* chains_cmd = app.add_subcommand("chains", "Saturate and dump chain families");
  add_language(chains_cmd, lang_in);
  chains_cmd->add_option("--alphabet", alphabet, "Declared alphabet for --regex");
  chains_cmd->add_option("--length", length, "Chain length (1..3)");
  auto* chains_subset =
      chains_cmd->add_option("--alphabet-subset", subset, "Restrict the dump to one subalphabet");
  add_common(chains_cmd, opts);

  auto* schemas_cmd = app.add_subcommand("schemas", "Compute alternation schemas");
  add_language(schemas_cmd, lang_in);
  schemas_cmd->add_option("--alphabet", alphabet, "Declared alphabet for --regex");
  auto* schemas_subset =
      schemas_cmd->add_option("--alphabet-subset", subset, "Restrict to one subalphabet");
  add_common(schemas_cmd, opts);

  auto* classify_cmd = app.add_subcommand("classify", "Class membership report");
  add_language(classify_cmd, lang_in);
  classify_cmd->add_option("--alphabet", alphabet, "Declared alphabet for --regex");
  add_common(classify_cmd, opts);

  auto* separate_cmd = app.add_subcommand("separate", "Separation of two languages");
  add_language(separate_cmd, lang_in, "1");
  add_language(separate_cmd, lang_in2, "2");
  separate_cmd->add_option("--alphabet", alphabet, "Declared alphabet for regex inputs");
  separate_cmd->add_option("--logic", logic, "sigma2 or pi2")
      ->check(CLI::IsMember({"sigma2", "pi2"}));
  add_common(separate_cmd, opts);

  auto* witness_cmd = app.add_subcommand("witness", "Build and verify chain witnesses");
  add_language(witness_cmd, lang_in);
  witness_cmd->add_option("--alphabet", alphabet, "Declared alphabet for --regex");
  witness_cmd->add_option("--chain", chain_text, "Chain element ids, comma-separated")
      ->required();
  witness_cmd->add_option("--rank", rank, "Game rank for the witness words");
  add_common(witness_cmd, opts);

  auto* oracle_cmd = app.add_subcommand("oracle", "Game-based ground truth");
  oracle_cmd->require_subcommand(1);

  auto* ef_cmd = oracle_cmd->add_subcommand("ef", "Decide the game preorder on two words");
  ef_cmd->add_option("--word1", word1, "Left word")->required();
  ef_cmd->add_option("--word2", word2, "Right word")->required();
  ef_cmd->add_option("--level", level, "Hierarchy level");
  ef_cmd->add_option("--rank", rank, "Number of rounds");
  ef_cmd->add_option("--budget", budget, "Game budget");

  auto* brute_cmd = oracle_cmd->add_subcommand("brute-chains", "Enumerate chains from bounded words");
  add_language(brute_cmd, lang_in);
  brute_cmd->add_option("--alphabet", alphabet, "Declared alphabet for --regex");
  brute_cmd->add_option("--level", level, "Hierarchy level");
  brute_cmd->add_option("--rank", rank, "Number of rounds");
  brute_cmd->add_option("--length", length, "Chain length");
  brute_cmd->add_option("--max-len", max_len, "Witness word length bound");
  add_common(brute_cmd, opts);

  auto* compare_cmd = oracle_cmd->add_subcommand("compare", "Diff brute-force vs saturated chains");
  add_language(compare_cmd, lang_in);
  compare_cmd->add_option("--alphabet", alphabet, "Declared alphabet for --regex");
  compare_cmd->add_option("--rank", rank, "Number of rounds");
  compare_cmd->add_option("--length", length, "Chain length");
  compare_cmd->add_option("--max-len", max_len, "Witness word length bound");
  add_common(compare_cmd, opts);

  std::vector<const char*> argv;
  argv.push_back("altlab");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return 0;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return 0;
    } catch (const CLI::ParseError& e) {
      err << "input error: " << e.what() << "\n";
      return 2;
    }

    const bool json = opts.format == "json";

    if (monoid_cmd->parsed()) {
      RecognizedLanguage lang = load_language(lang_in, alphabet, opts);
      if (json)
        out << dump_monoid(lang).dump(2) << "\n";
      else
        print_monoid_text(out, lang);
      return 0;
    }

    if (chains_cmd->parsed()) {
      RecognizedLanguage lang = load_language(lang_in, alphabet, opts);
      ContentMorphism beta(lang.morphism);
      auto family = saturate(beta, length, opts.limits());
      auto b = parse_subset(subset, chains_subset->count() > 0, lang.morphism.alphabet);
      nlohmann::json j = dump_chain_family(*family, b);
      if (json) {
        out << j.dump(2) << "\n";
      } else {
        out << "length: " << family->length << "\n";
        out << "iterations: " << family->iterations << "\n";
        out << "rank-bound: " << family->l_bound << "\n";
        for (auto& [key, sets] : j.at("families").items()) {
          out << "B={" << key << "}:\n";
          for (const auto& set : sets) {
            out << "  {";
            for (std::size_t i = 0; i < set.size(); ++i) {
              if (i) out << " ";
              out << "(";
              for (std::size_t k = 0; k < set[i].size(); ++k) {
                if (k) out << ",";
                out << set[i][k].get<int>();
              }
              out << ")";
            }
            out << "}\n";
          }
        }
      }
      return 0;
    }

    if (schemas_cmd->parsed()) {
      RecognizedLanguage lang = load_language(lang_in, alphabet, opts);
      ContentMorphism beta(lang.morphism);
      auto family = saturate(beta, 2, opts.limits());
      auto which = parse_subset(subset, schemas_subset->count() > 0, lang.morphism.alphabet);
      nlohmann::json all = nlohmann::json::object();
      for (AlphaSet b : subsets_ascending(static_cast<int>(lang.morphism.alphabet.size()))) {
        if (which && *which != b) continue;
        auto schemas = compute_b_schemas(*family, b);
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& s : schemas) arr.push_back(s.triple);
        all[alpha_set_to_string(b, lang.morphism.alphabet)] = arr;
      }
      if (json) {
        out << nlohmann::json{{"schemas", all}}.dump(2) << "\n";
      } else {
        for (auto& [key, arr] : all.items()) {
          out << "B={" << key << "}:";
          for (const auto& t : arr)
            out << " (" << t[0].get<int>() << "," << t[1].get<int>() << "," << t[2].get<int>()
                << ")";
          out << "\n";
        }
      }
      return 0;
    }

    if (classify_cmd->parsed()) {
      RecognizedLanguage lang = load_language(lang_in, alphabet, opts);
      ClassificationReport report = classify(lang, opts.limits());
      if (json) {
        out << report_json(report).dump(2) << "\n";
      } else {
        for (const auto& cv : report.classes) print_verdict_text(out, cv.name, cv.verdict);
      }
      return 0;
    }

    if (separate_cmd->parsed()) {
      RecognizedLanguage l1 = load_language(lang_in, alphabet, opts);
      RecognizedLanguage l2 = load_language(lang_in2, alphabet, opts);
      SeparationLogic sep =
          logic == "sigma2" ? SeparationLogic::Sigma2 : SeparationLogic::Pi2;
      Verdict v = decide_separation(l1, l2, sep, opts.limits());
      if (json)
        out << nlohmann::json{{"logic", logic}, {"separable", verdict_json(v)}}.dump(2) << "\n";
      else
        print_verdict_text(out, "separable (" + logic + ")", v);
      return 0;
    }

    if (witness_cmd->parsed()) {
      RecognizedLanguage lang = load_language(lang_in, alphabet, opts);
      ContentMorphism beta(lang.morphism);
      Chain chain = parse_chain(chain_text, lang.morphism.target->size);
      auto family = saturate(beta, static_cast<int>(chain.size()), opts.limits());
      const ChainSetEntry* entry = family->find_entry(chain);
      if (entry == nullptr) throw InputError("chain is not in the saturated family");
      WitnessBundle bundle = witness_from_derivation(*entry->derivation, chain, rank);
      VerifyResult check = verify_bundle(bundle, beta);
      if (json) {
        nlohmann::json j;
        j["chain"] = bundle.chain;
        j["rank"] = bundle.rank;
        j["content"] = alpha_set_to_string(bundle.content, lang.morphism.alphabet);
        j["words"] = bundle.words;
        j["notes"] = bundle.notes;
        j["verified"] = check.ok;
        if (!check.ok) j["diagnosis"] = check.diagnosis;
        out << j.dump(2) << "\n";
      } else {
        out << "chain:";
        for (Element e : chain) out << " " << e;
        out << "\nrank: " << bundle.rank << "\n";
        for (std::size_t j = 0; j < bundle.words.size(); ++j)
          out << "w" << (j + 1) << ": " << bundle.words[j] << "\n";
        for (const auto& note : bundle.notes) out << "note: " << note << "\n";
        out << "verified: " << (check.ok ? "yes" : "no (" + check.diagnosis + ")") << "\n";
      }
      return 0;
    }

    if (ef_cmd->parsed()) {
      bool res = ef_leq(word1, word2, GameConfig{level, rank, budget});
      out << (res ? "true" : "false") << "\n";
      return 0;
    }

    if (brute_cmd->parsed()) {
      RecognizedLanguage lang = load_language(lang_in, alphabet, opts);
      ContentMorphism beta(lang.morphism);
      BruteChainsResult res = brute_chains(beta, level, rank, length, max_len, budget);
      nlohmann::json j;
      j["level"] = res.level;
      j["rank"] = res.rank;
      j["length"] = res.length;
      j["max_len"] = res.max_len;
      j["note"] = res.note;
      j["chains"] = res.chains;
      if (json) {
        out << j.dump(2) << "\n";
      } else {
        out << "chains (level " << res.level << ", rank " << res.rank << ", words <= "
            << res.max_len << "):";
        for (const auto& c : res.chains) {
          out << " (";
          for (std::size_t k = 0; k < c.size(); ++k) {
            if (k) out << ",";
            out << c[k];
          }
          out << ")";
        }
        out << "\n";
      }
      return 0;
    }

    if (compare_cmd->parsed()) {
      RecognizedLanguage lang = load_language(lang_in, alphabet, opts);
      ContentMorphism beta(lang.morphism);
      auto family = saturate(beta, length, opts.limits());
      BruteChainsResult brute = brute_chains(beta, 2, rank, length, max_len, budget);
      std::vector<Chain> saturated = family->union_chains();
      std::vector<Chain> missing, extra;
      for (const auto& c : saturated)
        if (!std::binary_search(brute.chains.begin(), brute.chains.end(), c))
          missing.push_back(c);
      for (const auto& c : brute.chains)
        if (!std::binary_search(saturated.begin(), saturated.end(), c)) extra.push_back(c);
      nlohmann::json j;
      j["saturated_not_brute"] = missing;
      j["brute_not_saturated"] = extra;
      if (json) {
        out << j.dump(2) << "\n";
      } else {
        out << "saturated chains missing from brute enumeration: " << missing.size() << "\n";
        out << "brute chains not in the saturated family (expected at finite rank): "
            << extra.size() << "\n";
      }
      return 0;
    }

    err << "input error: no subcommand selected\n";
    return 2;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceCapError& e) {
    err << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const InternalInconsistencyError& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace altlab
