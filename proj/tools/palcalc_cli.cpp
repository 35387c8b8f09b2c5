// Command-line front end for the palette toolkit.
//
// Exit codes: 0 and 1 carry semantic verdicts (hom exists / none, separable /
// not separable, ...); 2 is reserved for usage, parse and internal errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "palcalc/palcalc.hpp"

namespace {

using namespace palcalc;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

std::string decimal(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// A palette file path, or '@' followed by a built-in palette name.
PaletteDocument load_palette(const std::string& arg) {
    if (!arg.empty() && arg[0] == '@') {
        const auto name = arg.substr(1);
        auto p = builtins::by_name(name);
        if (!p) throw std::runtime_error("unknown built-in palette: " + name);
        return {name, std::move(*p)};
    }
    try {
        return parse_palette(read_file(arg));
    } catch (const ParseError& e) {
        throw std::runtime_error(arg + ": " + e.what());
    }
}

std::vector<Palette> load_palettes(const std::vector<std::string>& args) {
    std::vector<Palette> out;
    for (const auto& a : args) out.push_back(load_palette(a).palette);
    return out;
}

void print_map(const Homomorphism& h) {
    for (std::size_t c = 0; c < h.map.size(); ++c) {
        std::cout << h.source.name(static_cast<ColorId>(c)) << " -> " << h.target.name(h.map[c]) << "\n";
    }
}

std::vector<double> parse_weights(const std::string& csv) {
    std::vector<double> w;
    std::stringstream ss(csv);
    for (std::string tok; std::getline(ss, tok, ',');) {
        std::size_t used = 0;
        w.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::runtime_error("bad weight: " + tok);
    }
    return w;
}

int run(int argc, char** argv) {
    CLI::App app{"Palette calculus toolkit for uniform Turan density"};
    app.require_subcommand(1);
    int status = kExitYes;

    std::string density_file;
    auto* density_cmd = app.add_subcommand("density", "Exact density |T|/|C|^3 of a palette");
    density_cmd->add_option("palette", density_file)->required();
    density_cmd->callback([&] {
        const auto doc = load_palette(density_file);
        const auto d = density(doc.palette);
        std::cout << d.numerator() << "/" << d.denominator() << " = "
                  << decimal(static_cast<double>(d.numerator()) / static_cast<double>(d.denominator())) << "\n";
    });

    std::string lag_file;
    LagrangianOptions lag_opts;
    auto* lag_cmd = app.add_subcommand("lagrangian", "Maximize the palette polynomial over the simplex");
    lag_cmd->add_option("palette", lag_file)->required();
    lag_cmd->add_option("--restarts", lag_opts.restarts, "random starts besides the uniform one")->check(CLI::PositiveNumber);
    lag_cmd->add_option("--tol", lag_opts.tol, "first-order stationarity tolerance")->check(CLI::PositiveNumber);
    lag_cmd->add_option("--seed", lag_opts.seed);
    lag_cmd->callback([&] {
        const auto doc = load_palette(lag_file);
        const auto r = lagrangian(doc.palette, lag_opts);
        std::cout << "value " << decimal(r.value) << "\n";
        std::cout << "argmax";
        for (std::size_t c = 0; c < r.argmax.size(); ++c) {
            std::cout << " " << doc.palette.name(static_cast<ColorId>(c)) << "=" << decimal(r.argmax[c]);
        }
        std::cout << "\nkkt_residual " << decimal(r.kkt_residual) << "\n";
        std::cout << "starts " << r.restarts_used << "\n";
    });

    std::string hom_src, hom_dst;
    bool hom_inv = false;
    std::uint64_t hom_limit = 0;
    auto* hom_cmd = app.add_subcommand("hom", "Search for a palette homomorphism");
    hom_cmd->add_option("source", hom_src)->required();
    hom_cmd->add_option("target", hom_dst)->required();
    hom_cmd->add_flag("--inv", hom_inv, "map into the inverse of the target");
    hom_cmd->add_option("--count", hom_limit, "count homomorphisms, saturating at LIMIT")->check(CLI::PositiveNumber);
    hom_cmd->callback([&] {
        const auto src = load_palette(hom_src).palette;
        auto dst = load_palette(hom_dst).palette;
        if (hom_inv) dst = inverse(dst);
        if (hom_limit > 0) {
            const auto n = count_homs(src, dst, hom_limit);
            std::cout << "count " << n << (n == hom_limit ? " (saturated)" : "") << "\n";
            status = n > 0 ? kExitYes : kExitNo;
            return;
        }
        if (auto h = exists_hom(src, dst)) {
            print_map(*h);
        } else {
            std::cout << "none\n";
            status = kExitNo;
        }
    });

    std::string op_name;
    std::vector<std::string> op_files;
    auto* op_cmd = app.add_subcommand("op", "Palette operations: inv, sym, product");
    op_cmd->add_option("operation", op_name)->required()->check(CLI::IsMember({"inv", "sym", "product"}));
    op_cmd->add_option("palettes", op_files)->required();
    op_cmd->callback([&] {
        std::vector<PaletteDocument> docs;
        for (const auto& f : op_files) docs.push_back(load_palette(f));
        if (op_name != "product" && docs.size() != 1) throw CLI::ValidationError("op " + op_name + " takes one palette");
        if (op_name == "inv") {
            std::cout << serialize_palette("inv_" + docs[0].name, inverse(docs[0].palette));
        } else if (op_name == "sym") {
            std::cout << serialize_palette("sym_" + docs[0].name, symmetrize(docs[0].palette));
        } else {
            std::vector<Palette> ps;
            std::string name;
            for (const auto& d : docs) {
                ps.push_back(d.palette);
                name += (name.empty() ? "" : "_x_") + d.name;
            }
            std::cout << serialize_palette(name, product(ps));
        }
    });

    std::string col_hg, col_pal;
    std::size_t col_bound = 0;
    auto* col_cmd = app.add_subcommand("colorable", "Decide palette-colorability of a small hypergraph");
    col_cmd->add_option("hypergraph", col_hg)->required();
    col_cmd->add_option("palette", col_pal)->required();
    col_cmd->add_option("--max-vertices", col_bound, "raise the default size bound (8 ordered / 7 unordered)");
    col_cmd->callback([&] {
        const auto hg = parse_hypergraph(read_file(col_hg));
        const auto pal = load_palette(col_pal).palette;
        ColorabilityOptions opts;
        if (col_bound > 0) {
            if (col_bound > (hg.order ? opts.max_ordered_vertices : opts.max_unordered_vertices)) {
                std::cerr << "warning: size bound above default; the search is exponential\n";
            }
            opts.max_ordered_vertices = std::max(opts.max_ordered_vertices, col_bound);
            opts.max_unordered_vertices = col_bound;
        }
        std::optional<ColorabilityWitness> w;
        if (hg.order) {
            if (auto c = ordered_colorable({hg.graph, *hg.order}, pal, opts)) w = ColorabilityWitness{*hg.order, *c};
        } else {
            w = colorable(hg.graph, pal, opts);
        }
        if (!w) {
            std::cout << "none\n";
            status = kExitNo;
            return;
        }
        std::cout << "order";
        for (auto v : w->order) std::cout << " " << v;
        std::cout << "\n";
        const auto n = hg.graph.vertex_count;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v) std::cout << "pair " << u << " " << v << " " << pal.name(w->coloring.at(u, v)) << "\n";
    });

    std::vector<std::string> sep_pos, sep_neg;
    auto* sep_cmd = app.add_subcommand("separates", "Decide whether some hypergraph separates the palettes");
    sep_cmd->add_option("--pos", sep_pos, "palettes the hypergraph must be colorable by")->required();
    sep_cmd->add_option("--neg", sep_neg, "palettes the hypergraph must not be colorable by")->required();
    sep_cmd->callback([&] {
        const auto verdict = family_condition({load_palettes(sep_pos), load_palettes(sep_neg)});
        std::cout << (verdict.separable ? "separable" : "not separable") << "\n";
        for (const auto& c : verdict.blocking) {
            std::cout << "certificate positive " << c.positive_index << " negative " << c.negative_index << " "
                      << to_string(c.direction) << "\n";
            print_map(c.hom);
        }
        status = verdict.separable ? kExitYes : kExitNo;
    });

    std::vector<std::string> wit_pos, wit_neg;
    std::size_t wit_max = 4;
    auto* wit_cmd = app.add_subcommand("witness", "Search small hypergraphs for a separating one");
    wit_cmd->add_option("--pos", wit_pos)->required();
    wit_cmd->add_option("--neg", wit_neg)->required();
    wit_cmd->add_option("--max-vertices", wit_max)->check(CLI::Range(3, 7));
    wit_cmd->callback([&] {
        const auto r = witness_search({load_palettes(wit_pos), load_palettes(wit_neg)}, wit_max);
        if (r.witness) {
            std::cout << serialize_hypergraph("witness", *r.witness);
        } else {
            std::cout << "none (bound exhausted)\n";
            status = kExitNo;
        }
    });

    std::string rnd_pal, rnd_dist;
    std::size_t rnd_n = 0;
    std::uint64_t rnd_seed = 0;
    auto* rnd_cmd = app.add_subcommand("random-hg", "Sample a random palette-colored hypergraph");
    rnd_cmd->add_option("palette", rnd_pal)->required();
    rnd_cmd->add_option("--n", rnd_n)->required()->check(CLI::PositiveNumber);
    rnd_cmd->add_option("--seed", rnd_seed);
    rnd_cmd->add_option("--dist", rnd_dist, "comma-separated color weights (default uniform)");
    rnd_cmd->callback([&] {
        const auto doc = load_palette(rnd_pal);
        auto dist = rnd_dist.empty() ? uniform_point(doc.palette.color_count()) : parse_weights(rnd_dist);
        const auto [hg, coloring] = random_palette_hypergraph(doc.palette, rnd_n, dist, rnd_seed);
        std::cout << serialize_hypergraph("random_" + doc.name, hg.base, hg.order);
    });

    auto* ver_cmd = app.add_subcommand("verify-481", "Check every premise of the 4/81 construction");
    ver_cmd->callback([&] {
        const auto report = verify_481();
        for (std::size_t i = 0; i < report.items.size(); ++i) {
            const auto& item = report.items[i];
            std::cout << "[" << (item.passed ? "PASS" : "FAIL") << "] (" << i + 1 << ") " << item.name << "\n";
            for (const auto& d : item.details) std::cout << "    " << d << "\n";
        }
        std::cout << (report.all_passed() ? "all checks passed" : "some checks FAILED") << "\n";
        status = report.all_passed() ? kExitYes : kExitNo;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}
