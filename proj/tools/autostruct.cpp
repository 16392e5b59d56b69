// autostruct: decide first-order sentences over word-automatic group
// presentations, run element arithmetic, export automata, and query the
// pro-p completion on lasso words.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "autostruct/aut_io.hpp"
#include "autostruct/buchi.hpp"
#include "autostruct/limits.hpp"
#include "autostruct/model_checker.hpp"
#include "autostruct/nil2.hpp"
#include "autostruct/presentation.hpp"

using json = nlohmann::ordered_json;
using namespace autostruct;

namespace {

struct CliConfig {
    std::string group = "gp";
    int p = 3;
    std::string format = "text";
    bool json_out() const { return format == "json"; }
};

void apply_budget_env() {
    const char* env = std::getenv("AUTOSTRUCT_BUDGET");
    if (!env) return;
    std::string s(env);
    size_t begin = 0;
    while (begin <= s.size()) {
        size_t end = s.find(',', begin);
        if (end == std::string::npos) end = s.size();
        std::string item = s.substr(begin, end - begin);
        begin = end + 1;
        if (item.empty()) continue;
        auto eq = item.find('=');
        try {
            if (eq == std::string::npos) {
                limits().max_subset_states = std::stoull(item);
            } else {
                std::string key = item.substr(0, eq);
                unsigned long long value = std::stoull(item.substr(eq + 1));
                if (key == "subsets")
                    limits().max_subset_states = value;
                else if (key == "product")
                    limits().max_product_states = value;
                else if (key == "tracks")
                    limits().max_element_tracks = static_cast<int>(value);
                else
                    throw Error("unknown AUTOSTRUCT_BUDGET key: " + key);
            }
        } catch (const std::invalid_argument&) {
            throw Error("bad AUTOSTRUCT_BUDGET entry: " + item);
        }
    }
}

Presentation presentation_from_manifest(const std::string& path) {
    json m = json::parse(read_file(path));
    std::string group = m.at("group").get<std::string>();
    int p = m.value("p", 3);
    if (group == "fp") return make_elem_abelian(p);
    if (group == "gp") return make_gp(p);
    if (group == "hp") return make_hp(p);
    if (group != "custom") throw Error("manifest group must be fp, gp, hp or custom");

    Presentation pres;
    pres.name = m.value("name", std::string("custom"));
    pres.kind = GroupKind::custom;
    pres.p = p;
    pres.tracks_per_element = m.value("tracks_per_element", 1);
    pres.domain = automaton_from_aut_text(m.at("domain").get<std::string>());
    for (auto& [name, payload] : m.at("relations").items()) {
        MultiTrackAutomaton a = automaton_from_aut_text(payload.get<std::string>());
        int arity = a.alphabet.tracks / pres.tracks_per_element;
        pres.relations[name] = RelationInfo{arity, std::move(a)};
    }
    if (m.contains("constants"))
        for (auto& [name, value] : m.at("constants").items())
            pres.constants[name] = value.get<std::string>();
    if (!pres.relations.count("M")) throw Error("manifest must define the relation M");
    return pres;
}

Presentation load_presentation(const CliConfig& cfg) {
    if (cfg.group == "fp") return make_elem_abelian(cfg.p);
    if (cfg.group == "gp") return make_gp(cfg.p);
    if (cfg.group == "hp") return make_hp(cfg.p);
    if (cfg.group.rfind("file:", 0) == 0) return presentation_from_manifest(cfg.group.substr(5));
    throw Error("unknown group '" + cfg.group + "' (use fp, gp, hp, hp-hat or file:<path>)");
}

std::string formula_text(const std::string& arg) {
    if (!arg.empty() && arg[0] == '@') return read_file(arg.substr(1));
    return arg;
}

// Element arguments accept both canonical strings and generator words.
std::string parse_element_arg(const Presentation& pres, const std::string& arg) {
    try {
        return encode(pres, generator_word_from_string(arg));
    } catch (const BadGenerator&) {
        return element_string(pres, element_tracks(pres, arg));
    }
}

void emit(const CliConfig& cfg, const json& payload, const std::string& text) {
    if (cfg.json_out())
        std::cout << payload.dump() << "\n";
    else
        std::cout << text << "\n";
}

int cmd_decide(const CliConfig& cfg, const std::string& formula) {
    Presentation pres = load_presentation(cfg);
    bool verdict = decide(pres, parse_formula(pres, formula_text(formula)));
    emit(cfg, json{{"command", "decide"}, {"formula", formula}, {"verdict", verdict}},
         verdict ? "true" : "false");
    return verdict ? 0 : 1;
}

int cmd_element_op(const CliConfig& cfg, const std::string& op,
                   const std::vector<std::string>& args) {
    Presentation pres = load_presentation(cfg);
    std::string result;
    if (op == "mul")
        result = mul_elements(pres, parse_element_arg(pres, args[0]),
                              parse_element_arg(pres, args[1]));
    else if (op == "inv")
        result = inverse(pres, parse_element_arg(pres, args[0]));
    else
        result = commutator(pres, parse_element_arg(pres, args[0]),
                            parse_element_arg(pres, args[1]));
    std::string word = to_string(decode(pres, result));
    emit(cfg, json{{"command", op}, {"result", result}, {"word", word}},
         result + " (= " + word + ")");
    return 0;
}

int cmd_define(const CliConfig& cfg, const std::string& formula, const std::string& out_path) {
    Presentation pres = load_presentation(cfg);
    DefinableSet ds = compile(pres, parse_formula(pres, formula_text(formula)));
    MultiTrackAutomaton canon = minimize(ds.automaton);
    std::string text = to_aut_text(canon);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        write_file(out_path, text);
        json vars = json::array();
        for (const auto& v : ds.vars) vars.push_back(v);
        emit(cfg,
             json{{"command", "define"},
                  {"vars", vars},
                  {"states", canon.num_states},
                  {"path", out_path}},
             "wrote " + out_path + " (" + std::to_string(canon.num_states) + " states, " +
                 std::to_string(ds.vars.size()) + " free variables)");
    }
    return 0;
}

int cmd_verify(const CliConfig& cfg) {
    Presentation pres = load_presentation(cfg);
    VerifyReport rep = verify_presentation(pres);
    if (cfg.json_out()) {
        json checks = json::array();
        for (const auto& c : rep.checks)
            checks.push_back(json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        std::cout << json{{"command", "verify"},
                          {"group", pres.name},
                          {"p", pres.p},
                          {"all_passed", rep.all_passed()},
                          {"checks", checks}}
                         .dump()
                  << "\n";
    } else {
        for (const auto& c : rep.checks)
            std::cout << (c.passed ? "  ok  " : " FAIL ") << c.name << "  (" << c.detail << ")\n";
        std::cout << (rep.all_passed() ? "all checks passed" : "some checks FAILED") << "\n";
    }
    return rep.all_passed() ? 0 : 1;
}

int cmd_lasso(const CliConfig& cfg, const std::string& relation,
              const std::vector<std::string>& args) {
    if (cfg.group != "hp-hat")
        throw Error("lasso queries run on the completion; use --group hp-hat");
    BuchiAutomaton aut;
    if (relation == "M")
        aut = make_hp_hat_mul(cfg.p);
    else if (relation == "domain")
        aut = make_hp_hat_domain(cfg.p);
    else
        throw UnknownSymbol("hp-hat offers the relations M and domain");
    std::vector<std::pair<TrackWord, TrackWord>> per_track;
    for (const auto& arg : args)
        for (auto& tr : parse_lasso_tracks(arg, cfg.p)) per_track.push_back(tr);
    LassoWord w = align_lassos(aut.alphabet, per_track);
    bool verdict = accepts_lasso(aut, w);
    emit(cfg, json{{"command", "lasso"}, {"relation", relation}, {"verdict", verdict}},
         verdict ? "accept" : "reject");
    return verdict ? 0 : 1;
}

int cmd_dot(const std::string& path) {
    std::string text = read_file(path);
    if (text.find("kind buchi") == 0)
        std::cout << to_dot(buchi_from_aut_text(text));
    else
        std::cout << to_dot(automaton_from_aut_text(text));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"word-automatic group presentations: decision procedures and codecs"};
    app.require_subcommand(1);

    CliConfig cfg;
    std::string formula, out_path, relation, dot_path;
    std::vector<std::string> elements;
    std::vector<std::string> lasso_args;
    unsigned long long max_states = 0;
    int max_tracks = 0;

    auto add_common = [&](CLI::App* sub, bool needs_group) {
        if (needs_group) sub->add_option("--group", cfg.group, "fp, gp, hp, hp-hat or file:<path.pres>");
        sub->add_option("-p,--prime", cfg.p, "characteristic prime");
        sub->add_option("--format", cfg.format, "text or json")
            ->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--max-states", max_states, "determinization subset budget");
        sub->add_option("--max-tracks", max_tracks, "simultaneous variable budget");
    };

    CLI::App* decide_cmd = app.add_subcommand("decide", "decide a closed formula");
    add_common(decide_cmd, true);
    decide_cmd->add_option("-f,--formula,formula", formula, "formula text or @file")->required();

    CLI::App* mul_cmd = app.add_subcommand("mul", "multiply two elements");
    add_common(mul_cmd, true);
    mul_cmd->add_option("elements", elements, "two elements or generator words")
        ->expected(2)
        ->required();

    CLI::App* inv_cmd = app.add_subcommand("inv", "invert an element");
    add_common(inv_cmd, true);
    inv_cmd->add_option("elements", elements, "an element or generator word")
        ->expected(1)
        ->required();

    CLI::App* comm_cmd = app.add_subcommand("comm", "commutator of two elements");
    add_common(comm_cmd, true);
    comm_cmd->add_option("elements", elements, "two elements or generator words")
        ->expected(2)
        ->required();

    CLI::App* define_cmd = app.add_subcommand("define", "compile a formula to an automaton");
    add_common(define_cmd, true);
    define_cmd->add_option("-f,--formula,formula", formula, "formula text or @file")->required();
    define_cmd->add_option("-o,--output", out_path, "output .aut path (stdout when absent)");

    CLI::App* verify_cmd = app.add_subcommand("verify", "run the group-law suite");
    add_common(verify_cmd, true);

    CLI::App* lasso_cmd = app.add_subcommand("lasso", "membership of an ultimately periodic word");
    add_common(lasso_cmd, true);
    lasso_cmd->add_option("relation", relation, "relation name (M or domain)")->required();
    lasso_cmd->add_option("words", lasso_args, "per-element lassos, e.g. \"1^w|0^w\"")
        ->required();

    CLI::App* dot_cmd = app.add_subcommand("dot", "render an automaton file as graphviz");
    dot_cmd->add_option("path", dot_path, ".aut or .baut file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // 0 covers --help and --version
    }

    try {
        apply_budget_env();
        if (max_states) limits().max_subset_states = max_states;
        if (max_tracks) limits().max_element_tracks = max_tracks;

        if (decide_cmd->parsed()) return cmd_decide(cfg, formula);
        if (mul_cmd->parsed()) return cmd_element_op(cfg, "mul", elements);
        if (inv_cmd->parsed()) return cmd_element_op(cfg, "inv", elements);
        if (comm_cmd->parsed()) return cmd_element_op(cfg, "comm", elements);
        if (define_cmd->parsed()) return cmd_define(cfg, formula, out_path);
        if (verify_cmd->parsed()) return cmd_verify(cfg);
        if (lasso_cmd->parsed()) return cmd_lasso(cfg, relation, lasso_args);
        if (dot_cmd->parsed()) return cmd_dot(dot_path);
        throw Error("no subcommand");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
