#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "heis/errors.hpp"
#include "heis/finite_group.hpp"
#include "heis/heisenberg.hpp"
#include "heis/json_io.hpp"
#include "heis/numeric.hpp"
#include "heis/product.hpp"
#include "heis/profinite.hpp"
#include "heis/radic.hpp"
#include "heis/solenoid.hpp"
#include "heis/subriemannian.hpp"
#include "heis/verify.hpp"
#include "heis/version.hpp"

namespace {

using heis::Int;
using heis::Rat;
using heis::io::json;

// What a subcommand handler produces; main() wraps it into the report
// envelope and prints the summary on stderr.
struct Outcome {
    json inputs = json::object();
    json results = json::object();
    std::string summary;
    int exit_code = 0;
};

json parse_json_arg(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw heis::Error(std::string("malformed JSON for ") + what + ": " +
                          e.what());
    }
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception&) {
            throw heis::Error("cannot parse '" + item +
                              "' as a floating-point number");
        }
    }
    return out;
}

// Subcommands take --h as a point operand, so help is long-form only.
CLI::App* make_sub(CLI::App* parent, const std::string& name,
                   const std::string& desc) {
    CLI::App* sub = parent->add_subcommand(name, desc);
    sub->set_help_flag("--help", "print this help message and exit");
    sub->fallthrough(); // lets global flags like --json follow the subcommand
    return sub;
}

json members_as_json(const heis::finite::Subgroup& H) {
    json out = json::array();
    for (const std::size_t m : H.members()) {
        out.push_back(heis::io::point_to_json(H.group().point(m)));
    }
    return out;
}

json group_descriptor(int n, const Int& k) {
    return json{{"n", n}, {"k", heis::format_int(k)}};
}

// The two operands of a binary point operation must come from the same ring.
template <typename Fn>
json with_same_ring(const heis::io::AnyPoint& g, const heis::io::AnyPoint& h,
                    Fn fn) {
    return std::visit(
        [&](const auto& a) -> json {
            using P = std::decay_t<decltype(a)>;
            const P* b = std::get_if<P>(&h);
            if (b == nullptr) {
                throw heis::IncompatibleOperandsError(
                    "operands live over different coefficient rings");
            }
            return heis::io::point_to_json(fn(a, *b));
        },
        g);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heisenberg-group toolkit: exact group arithmetic over "
                 "interchangeable rings, finite quotients, r-adic towers, "
                 "solenoids, and numerical sub-Riemannian geometry"};
    app.require_subcommand(1);

    bool json_only = false;
    app.add_flag("--json", json_only,
                 "machine output only (suppress the stderr summary)");

    std::string sub_name;
    std::function<Outcome()> handler;
    std::uint64_t seed = 0;

    // ---- group ------------------------------------------------------------
    auto* grp = make_sub(&app, "group", "finite quotients H_n(Z/kZ)");
    grp->require_subcommand(1);
    int g_n = 1;
    std::int64_t g_k = 2;
    std::int64_t g_r = 2;
    int g_depth = 3;

    auto add_nk = [&](CLI::App* sub) {
        sub->add_option("--n", g_n, "Heisenberg dimension parameter")
            ->default_val(1);
        sub->add_option("--k", g_k, "modulus k of the coefficient ring")
            ->default_val(2);
    };
    auto add_nrdepth = [&](CLI::App* sub) {
        sub->add_option("--n", g_n, "Heisenberg dimension parameter")
            ->default_val(1);
        sub->add_option("--r", g_r, "lattice scale r")->default_val(2);
        sub->add_option("--depth", g_depth,
                        "work inside H_n(Z/r^depth Z)")
            ->default_val(3);
    };

    auto* grp_order = make_sub(grp, "order", "order of H_n(Z/kZ)");
    add_nk(grp_order);
    grp_order->callback([&] {
        sub_name = "group order";
        handler = [&]() -> Outcome {
            const auto G = heis::finite::FiniteHeisenberg::enumerate(g_n, Int(g_k));
            Outcome out;
            out.inputs = {{"n", g_n}, {"k", g_k}};
            out.results = {{"group", group_descriptor(g_n, Int(g_k))},
                           {"order", std::to_string(G.order())}};
            out.summary = "H_" + std::to_string(g_n) + "(Z/" +
                          std::to_string(g_k) + "Z) has order " +
                          std::to_string(G.order());
            return out;
        };
    });

    auto* grp_center = make_sub(grp, "center", "center of H_n(Z/kZ)");
    add_nk(grp_center);
    grp_center->callback([&] {
        sub_name = "group center";
        handler = [&]() -> Outcome {
            const auto G = heis::finite::FiniteHeisenberg::enumerate(g_n, Int(g_k));
            const auto Z = heis::finite::center_of(G);
            bool t_axis = true;
            for (const std::size_t m : Z.members()) {
                t_axis = t_axis && heis::is_central(G.point(m));
            }
            Outcome out;
            out.inputs = {{"n", g_n}, {"k", g_k}};
            out.results = {{"group", group_descriptor(g_n, Int(g_k))},
                           {"order", std::to_string(G.order())},
                           {"center_order", std::to_string(Z.order())},
                           {"is_t_axis", t_axis},
                           {"members", members_as_json(Z)}};
            out.summary = "center has order " + std::to_string(Z.order()) +
                          (t_axis ? " (the t-axis)" : " (NOT the t-axis)");
            return out;
        };
    });

    auto* grp_comm =
        make_sub(grp, "commutator", "commutator subgroup of H_n(Z/kZ)");
    add_nk(grp_comm);
    grp_comm->callback([&] {
        sub_name = "group commutator";
        handler = [&]() -> Outcome {
            const auto G = heis::finite::FiniteHeisenberg::enumerate(g_n, Int(g_k));
            const auto C = heis::finite::commutator_subgroup(G);
            const bool equals_center =
                C.members() == heis::finite::center_of(G).members();
            Outcome out;
            out.inputs = {{"n", g_n}, {"k", g_k}};
            out.results = {{"group", group_descriptor(g_n, Int(g_k))},
                           {"order", std::to_string(G.order())},
                           {"commutator_order", std::to_string(C.order())},
                           {"equals_center", equals_center},
                           {"members", members_as_json(C)}};
            out.summary = "commutator subgroup has order " +
                          std::to_string(C.order()) +
                          (equals_center ? "; equals the center"
                                         : "; differs from the center");
            return out;
        };
    });

    auto* grp_index = make_sub(grp, 
        "index", "indices of the sublattice images inside H_n(Z/r^depth Z)");
    add_nrdepth(grp_index);
    grp_index->callback([&] {
        sub_name = "group index";
        handler = [&]() -> Outcome {
            const Int k = heis::pow_int(Int(g_r),
                                        static_cast<unsigned long>(g_depth));
            const auto G = heis::finite::FiniteHeisenberg::enumerate(g_n, k);
            const auto dil = heis::finite::dilation_image(G, Int(g_r));
            const auto lat = heis::finite::lattice_image(G, Int(g_r));
            const Int dil_index = heis::finite::subgroup_index(G, dil);
            const Int lat_index = heis::finite::subgroup_index(G, lat);
            Outcome out;
            out.inputs = {{"n", g_n}, {"r", g_r}, {"depth", g_depth}};
            out.results = {
                {"group", group_descriptor(g_n, k)},
                {"order", std::to_string(G.order())},
                {"indices",
                 {{"dilation_image", heis::format_int(dil_index)},
                  {"lattice_image", heis::format_int(lat_index)}}},
                {"orders",
                 {{"dilation_image", std::to_string(dil.order())},
                  {"lattice_image", std::to_string(lat.order())}}}};
            out.summary = "indices in H_" + std::to_string(g_n) + "(Z/" +
                          heis::format_int(k) + "Z): dilation image " +
                          heis::format_int(dil_index) + ", lattice image " +
                          heis::format_int(lat_index);
            return out;
        };
    });

    auto* grp_normal = make_sub(grp, 
        "normal", "normality of the sublattice images inside H_n(Z/r^depth Z)");
    add_nrdepth(grp_normal);
    grp_normal->callback([&] {
        sub_name = "group normal";
        handler = [&]() -> Outcome {
            const Int k = heis::pow_int(Int(g_r),
                                        static_cast<unsigned long>(g_depth));
            const auto G = heis::finite::FiniteHeisenberg::enumerate(g_n, k);
            const auto dil = heis::finite::dilation_image(G, Int(g_r));
            const auto lat = heis::finite::lattice_image(G, Int(g_r));
            const bool lat_normal = heis::finite::is_normal(G, lat);
            const bool dil_normal = heis::finite::is_normal(G, dil);
            const bool dil_in_lat = heis::finite::is_normal_in(lat, dil);
            Outcome out;
            out.inputs = {{"n", g_n}, {"r", g_r}, {"depth", g_depth}};
            out.results = {{"group", group_descriptor(g_n, k)},
                           {"lattice_image_normal", lat_normal},
                           {"dilation_image_normal", dil_normal},
                           {"dilation_image_normal_in_lattice_image",
                            dil_in_lat}};
            std::ostringstream os;
            os << "lattice image normal: " << (lat_normal ? "yes" : "no")
               << "; dilation image normal: " << (dil_normal ? "yes" : "no")
               << "; dilation image normal inside lattice image: "
               << (dil_in_lat ? "yes" : "no");
            out.summary = os.str();
            return out;
        };
    });

    auto* grp_closure = make_sub(grp, 
        "closure",
        "normal closure of the dilation image inside H_n(Z/r^depth Z)");
    add_nrdepth(grp_closure);
    grp_closure->callback([&] {
        sub_name = "group closure";
        handler = [&]() -> Outcome {
            const Int k = heis::pow_int(Int(g_r),
                                        static_cast<unsigned long>(g_depth));
            const auto G = heis::finite::FiniteHeisenberg::enumerate(g_n, k);
            const auto dil = heis::finite::dilation_image(G, Int(g_r));
            const auto lat = heis::finite::lattice_image(G, Int(g_r));
            const auto N = heis::finite::normal_closure(G, dil);
            Outcome out;
            out.inputs = {{"n", g_n}, {"r", g_r}, {"depth", g_depth}};
            out.results = {{"group", group_descriptor(g_n, k)},
                           {"closure_order", std::to_string(N.order())},
                           {"closure_index", heis::format_int(
                                                 heis::finite::subgroup_index(
                                                     G, N))},
                           {"equals_lattice_image",
                            N.members() == lat.members()}};
            out.summary = "normal closure of the dilation image has order " +
                          std::to_string(N.order());
            return out;
        };
    });

    // ---- heis ---------------------------------------------------------------
    auto* hgrp = make_sub(&app,
        "heis", "group law over an arbitrary coefficient ring");
    hgrp->require_subcommand(1);
    std::string h_g, h_h, h_factor;

    auto heis_binary = [&](const char* name, const char* desc, auto op) {
        auto* sub = make_sub(hgrp, name, desc);
        sub->add_option("--g", h_g, "first point (JSON)")->required();
        sub->add_option("--h", h_h, "second point (JSON)")->required();
        sub->callback([&, name, op] {
            sub_name = std::string("heis ") + name;
            handler = [&, op]() -> Outcome {
                const json jg = parse_json_arg(h_g, "--g");
                const json jh = parse_json_arg(h_h, "--h");
                const auto g = heis::io::point_from_json(jg);
                const auto h = heis::io::point_from_json(jh);
                Outcome out;
                out.inputs = {{"g", jg}, {"h", jh}};
                out.results = {{"point", with_same_ring(g, h, op)}};
                out.summary = sub_name + ": " + out.results["point"].dump();
                return out;
            };
        });
    };
    heis_binary("compose", "g * h", [](const auto& a, const auto& b) {
        return heis::compose(a, b);
    });
    heis_binary("conjugate", "h * g * h^{-1}",
                [](const auto& a, const auto& b) {
                    return heis::conjugate(a, b);
                });
    heis_binary("commutator", "g * h * g^{-1} * h^{-1}",
                [](const auto& a, const auto& b) {
                    return heis::commutator(a, b);
                });

    auto* heis_inv = make_sub(hgrp, "inverse", "g^{-1}");
    heis_inv->add_option("--g", h_g, "point (JSON)")->required();
    heis_inv->callback([&] {
        sub_name = "heis inverse";
        handler = [&]() -> Outcome {
            const json jg = parse_json_arg(h_g, "--g");
            const auto g = heis::io::point_from_json(jg);
            Outcome out;
            out.inputs = {{"g", jg}};
            out.results = {
                {"point", std::visit(
                              [](const auto& a) {
                                  return heis::io::point_to_json(
                                      heis::inverse(a));
                              },
                              g)}};
            out.summary = "heis inverse: " + out.results["point"].dump();
            return out;
        };
    });

    auto* heis_dil = make_sub(hgrp, 
        "dilate", "delta_s(g) = (s x, s y, s^2 t)");
    heis_dil->add_option("--g", h_g, "point (JSON)")->required();
    heis_dil->add_option("--factor", h_factor, "dilation factor s")
        ->required();
    heis_dil->callback([&] {
        sub_name = "heis dilate";
        handler = [&]() -> Outcome {
            const json jg = parse_json_arg(h_g, "--g");
            const auto g = heis::io::point_from_json(jg);
            const json result = std::visit(
                [&](const auto& a) -> json {
                    using P = std::decay_t<decltype(a)>;
                    if constexpr (std::is_same_v<P,
                                                 heis::HeisenbergPoint<Rat>>) {
                        return heis::io::point_to_json(
                            heis::dilate(a, heis::parse_rat(h_factor)));
                    } else if constexpr (std::is_same_v<
                                             P, heis::HeisenbergPoint<Int>>) {
                        return heis::io::point_to_json(
                            heis::dilate(a, heis::parse_int(h_factor)));
                    } else if constexpr (std::is_same_v<
                                             P, heis::HeisenbergPoint<
                                                    heis::Residue>>) {
                        return heis::io::point_to_json(heis::dilate(
                            a, heis::Residue(heis::parse_int(h_factor),
                                             a.t().modulus())));
                    } else {
                        return heis::io::point_to_json(heis::dilate(
                            a, heis::RAdicInt(a.t().radix(), a.t().depth(),
                                              heis::parse_int(h_factor))));
                    }
                },
                g);
            Outcome out;
            out.inputs = {{"g", jg}, {"factor", h_factor}};
            out.results = {{"point", result}};
            out.summary = "heis dilate: " + result.dump();
            return out;
        };
    });

    // ---- radic ----------------------------------------------------------------
    auto* rad = make_sub(&app,
        "radic", "r-adic absolute value, truncations, and coherence");
    rad->require_subcommand(1);
    std::string r_a, r_b, r_x;
    std::int64_t r_r = 2;
    int r_L = 1;

    auto* rad_abs = make_sub(rad, "abs", "|a|_r");
    rad_abs->add_option("--a", r_a, "integer a")->required();
    rad_abs->add_option("--r", r_r, "radix r")->required();
    rad_abs->callback([&] {
        sub_name = "radic abs";
        handler = [&]() -> Outcome {
            const Rat v = heis::radic_abs(heis::parse_int(r_a), Int(r_r));
            Outcome out;
            out.inputs = {{"a", r_a}, {"r", r_r}};
            out.results = {{"abs", heis::format_rat(v)}};
            out.summary = "|" + r_a + "|_" + std::to_string(r_r) + " = " +
                          heis::format_rat(v);
            return out;
        };
    });

    auto* rad_dist = make_sub(rad, "dist", "d_r(a, b) = |a - b|_r");
    rad_dist->add_option("--a", r_a, "integer a")->required();
    rad_dist->add_option("--b", r_b, "integer b")->required();
    rad_dist->add_option("--r", r_r, "radix r")->required();
    rad_dist->callback([&] {
        sub_name = "radic dist";
        handler = [&]() -> Outcome {
            const Rat v = heis::radic_dist(heis::parse_int(r_a),
                                           heis::parse_int(r_b), Int(r_r));
            Outcome out;
            out.inputs = {{"a", r_a}, {"b", r_b}, {"r", r_r}};
            out.results = {{"dist", heis::format_rat(v)}};
            out.summary = "d_" + std::to_string(r_r) + "(" + r_a + ", " + r_b +
                          ") = " + heis::format_rat(v);
            return out;
        };
    });

    auto radic_binary = [&](const char* name, const char* desc, auto op) {
        auto* sub = make_sub(rad, name, desc);
        sub->add_option("--a", r_a, "integer a")->required();
        sub->add_option("--b", r_b, "integer b")->required();
        sub->add_option("--r", r_r, "radix r")->required();
        sub->add_option("--L", r_L, "truncation depth L")->required();
        sub->callback([&, name, op] {
            sub_name = std::string("radic ") + name;
            handler = [&, op]() -> Outcome {
                const heis::RAdicInt a =
                    heis::RAdicInt::embed(heis::parse_int(r_a), Int(r_r), r_L);
                const heis::RAdicInt b =
                    heis::RAdicInt::embed(heis::parse_int(r_b), Int(r_r), r_L);
                const heis::RAdicInt c = op(a, b);
                Outcome out;
                out.inputs = {{"a", r_a}, {"b", r_b}, {"r", r_r}, {"L", r_L}};
                out.results = {
                    {"value", heis::format_int(c.digit())},
                    {"modulus", heis::format_int(c.modulus())},
                    {"levels", heis::io::product_to_json(heis::to_product(c))}};
                out.summary = sub_name + ": " + heis::format_int(c.digit()) +
                              " (mod " + heis::format_int(c.modulus()) + ")";
                return out;
            };
        });
    };
    radic_binary("add", "truncated r-adic sum",
                 [](const heis::RAdicInt& a, const heis::RAdicInt& b) {
                     return a + b;
                 });
    radic_binary("mul", "truncated r-adic product",
                 [](const heis::RAdicInt& a, const heis::RAdicInt& b) {
                     return a * b;
                 });

    auto* rad_embed = make_sub(rad, 
        "embed", "coherent tower (a mod r, ..., a mod r^L)");
    rad_embed->add_option("--a", r_a, "integer a")->required();
    rad_embed->add_option("--r", r_r, "radix r")->required();
    rad_embed->add_option("--L", r_L, "tower depth L")->required();
    rad_embed->callback([&] {
        sub_name = "radic embed";
        handler = [&]() -> Outcome {
            const heis::ProductElement x =
                heis::ProductElement::embed(heis::parse_int(r_a), Int(r_r), r_L);
            Outcome out;
            out.inputs = {{"a", r_a}, {"r", r_r}, {"L", r_L}};
            out.results = {{"levels", heis::io::product_to_json(x)}};
            out.summary = "radic embed: " + out.results["levels"].dump();
            return out;
        };
    });

    auto* rad_coherent = make_sub(rad, 
        "coherent", "test a residue tower for coherence");
    rad_coherent->add_option("--x", r_x, "tower (JSON array of residues)")
        ->required();
    rad_coherent->callback([&] {
        sub_name = "radic coherent";
        handler = [&]() -> Outcome {
            const json jx = parse_json_arg(r_x, "--x");
            const heis::ProductElement x = heis::io::product_from_json(jx);
            const bool ok = heis::is_coherent(x);
            Outcome out;
            out.inputs = {{"x", jx}};
            out.results = {{"coherent", ok}};
            if (ok) {
                const heis::RAdicInt a = heis::to_radic(x);
                out.results["radic"] = {
                    {"value", heis::format_int(a.digit())},
                    {"modulus", heis::format_int(a.modulus())}};
            }
            out.summary = std::string("coherent: ") + (ok ? "yes" : "no");
            return out;
        };
    });

    // ---- profinite ----------------------------------------------------------
    auto* pro = make_sub(&app,
        "profinite", "residue towers of Heisenberg points");
    pro->require_subcommand(1);
    std::string p_point, p_tower, p_input;
    std::int64_t p_r = 2;
    int p_L = 1;

    auto* pro_embed = make_sub(pro, 
        "embed", "levelwise reduction of an integer point");
    pro_embed->add_option("--point", p_point, "integer point (JSON)")
        ->required();
    pro_embed->add_option("--r", p_r, "radix r")->required();
    pro_embed->add_option("--L", p_L, "tower depth L")->required();
    pro_embed->callback([&] {
        sub_name = "profinite embed";
        handler = [&]() -> Outcome {
            const json jp = parse_json_arg(p_point, "--point");
            const auto g = heis::io::int_point_from_json(jp);
            const auto w = heis::profinite::embed(g, Int(p_r), p_L);
            Outcome out;
            out.inputs = {{"point", jp}, {"r", p_r}, {"L", p_L}};
            out.results = {{"tower", heis::io::tower_to_json(w)}};
            out.summary = "embedded through depth " + std::to_string(p_L);
            return out;
        };
    });

    auto* pro_check = make_sub(pro, "check", "coherence of a tower");
    pro_check->add_option("--tower", p_tower, "tower (JSON)")->required();
    pro_check->callback([&] {
        sub_name = "profinite check";
        handler = [&]() -> Outcome {
            const json jw = parse_json_arg(p_tower, "--tower");
            const auto w = heis::io::tower_from_json(jw);
            const bool ok = heis::profinite::is_coherent(w);
            Outcome out;
            out.inputs = {{"tower", jw}};
            out.results = {{"coherent", ok}};
            if (ok) {
                out.results["integer_lift"] = heis::io::point_to_json(
                    heis::profinite::integer_lift(w));
            }
            out.summary = std::string("coherent: ") + (ok ? "yes" : "no");
            return out;
        };
    });

    auto* pro_convert = make_sub(pro, 
        "convert",
        "tower -> r-adic-coordinate point, or back (detected from the shape)");
    pro_convert->add_option("--input", p_input, "tower or r-adic point (JSON)")
        ->required();
    pro_convert->callback([&] {
        sub_name = "profinite convert";
        handler = [&]() -> Outcome {
            const json ji = parse_json_arg(p_input, "--input");
            Outcome out;
            out.inputs = {{"input", ji}};
            if (ji.contains("levels")) {
                const auto w = heis::io::tower_from_json(ji);
                out.results = {{"point", heis::io::point_to_json(
                                             heis::profinite::to_adic(w))}};
                out.summary = "tower -> r-adic coordinates";
            } else {
                const auto p = heis::io::adic_point_from_json(ji);
                out.results = {{"tower", heis::io::tower_to_json(
                                             heis::profinite::from_adic(p))}};
                out.summary = "r-adic coordinates -> tower";
            }
            return out;
        };
    });

    // ---- solenoid -------------------------------------------------------------
    auto* sol = make_sub(&app,
        "solenoid", "quotients H_n(Q)/H_n(r^L Z) and the dilation shift");
    sol->require_subcommand(1);
    std::string s_point, s_h, s_lattice = "standard";
    std::int64_t s_r = 2;
    int s_L = 0;
    int s_n = 1;

    auto* sol_reduce = make_sub(sol, 
        "reduce", "canonical coset representative of a rational point");
    sol_reduce->add_option("--point", s_point, "rational point (JSON)")
        ->required();
    sol_reduce->add_option("--r", s_r, "radix r")->required();
    sol_reduce->add_option("--L", s_L, "depth L (modulus r^L)")->required();
    sol_reduce->add_option("--lattice", s_lattice, "standard | dilated")
        ->check(CLI::IsMember({"standard", "dilated"}));
    sol_reduce->callback([&] {
        sub_name = "solenoid reduce";
        handler = [&]() -> Outcome {
            const json jp = parse_json_arg(s_point, "--point");
            const auto g = heis::io::rat_point_from_json(jp);
            Outcome out;
            out.inputs = {{"point", jp},
                          {"r", s_r},
                          {"L", s_L},
                          {"lattice", s_lattice}};
            json result;
            if (s_lattice == "dilated") {
                result = heis::io::solenoid_to_json(
                    heis::solenoid::canonical_reduce_dilated(g, Int(s_r), s_L));
            } else {
                result = heis::io::solenoid_to_json(
                    heis::solenoid::canonical_reduce(g, Int(s_r), s_L));
            }
            out.results = {{"point", result}};
            out.summary = "canonical representative: " + result["rep"].dump();
            return out;
        };
    });

    auto* sol_project = make_sub(sol, 
        "project", "projection of a solenoid point to a coarser level");
    sol_project->add_option("--point", s_point, "solenoid point (JSON)")
        ->required();
    sol_project->add_option("--L", s_L, "target level")->required();
    sol_project->callback([&] {
        sub_name = "solenoid project";
        handler = [&]() -> Outcome {
            const json jp = parse_json_arg(s_point, "--point");
            const auto p = heis::io::solenoid_from_json(jp);
            const auto q = heis::solenoid::project_level(p, s_L);
            Outcome out;
            out.inputs = {{"point", jp}, {"L", s_L}};
            out.results = {{"point", heis::io::solenoid_to_json(q)}};
            out.summary = "projected to level " + std::to_string(s_L);
            return out;
        };
    });

    auto* sol_act = make_sub(sol, 
        "act", "left action of a rational group element");
    sol_act->add_option("--h", s_h, "acting element (rational point JSON)")
        ->required();
    sol_act->add_option("--point", s_point, "solenoid point (JSON)")
        ->required();
    sol_act->callback([&] {
        sub_name = "solenoid act";
        handler = [&]() -> Outcome {
            const json jh = parse_json_arg(s_h, "--h");
            const json jp = parse_json_arg(s_point, "--point");
            const auto h = heis::io::rat_point_from_json(jh);
            const auto p = heis::io::any_solenoid_from_json(jp);
            const json result = std::visit(
                [&](const auto& q) {
                    return heis::io::solenoid_to_json(
                        heis::solenoid::left_action(h, q));
                },
                p);
            Outcome out;
            out.inputs = {{"h", jh}, {"point", jp}};
            out.results = {{"point", result}};
            out.summary = "acted: " + result["rep"].dump();
            return out;
        };
    });

    auto* sol_shift = make_sub(sol, 
        "shift", "the dilation-induced shift map");
    sol_shift->add_option("--point", s_point, "solenoid point (JSON)")
        ->required();
    sol_shift->callback([&] {
        sub_name = "solenoid shift";
        handler = [&]() -> Outcome {
            const json jp = parse_json_arg(s_point, "--point");
            const auto p = heis::io::solenoid_from_json(jp);
            const auto q = heis::solenoid::shift_map(p);
            Outcome out;
            out.inputs = {{"point", jp}};
            out.results = {{"point", heis::io::solenoid_to_json(q)}};
            out.summary = "shifted: " +
                          out.results["point"]["rep"].dump();
            return out;
        };
    });

    auto* sol_pre = make_sub(sol, 
        "preimages", "all shift preimages of a depth-0 point");
    sol_pre->add_option("--point", s_point,
                        "depth-0 solenoid point (JSON); identity when omitted");
    sol_pre->add_option("--n", s_n, "dimension (with --r, for the identity)")
        ->default_val(1);
    sol_pre->add_option("--r", s_r, "radix (with --n, for the identity)")
        ->default_val(2);
    sol_pre->callback([&] {
        sub_name = "solenoid preimages";
        handler = [&]() -> Outcome {
            Outcome out;
            json jp;
            if (s_point.empty()) {
                const std::vector<Rat> zeros(static_cast<std::size_t>(s_n),
                                             Rat(0));
                const heis::HeisenbergPoint<Rat> id(zeros, zeros, Rat(0));
                jp = heis::io::solenoid_to_json(
                    heis::solenoid::canonical_reduce(id, Int(s_r), 0));
                out.inputs = {{"n", s_n}, {"r", s_r}};
            } else {
                jp = parse_json_arg(s_point, "--point");
                out.inputs = {{"point", jp}};
            }
            const auto p = heis::io::solenoid_from_json(jp);
            const auto pre = heis::solenoid::shift_preimages(p);
            json list = json::array();
            for (const auto& q : pre) {
                list.push_back(heis::io::solenoid_to_json(q));
            }
            out.results = {{"count", pre.size()}, {"preimages", list}};
            out.summary = "shift preimages: " + std::to_string(pre.size());
            return out;
        };
    });

    auto* sol_identify = make_sub(sol, 
        "identify",
        "translate between the standard and dilated lattice towers");
    sol_identify->add_option("--point", s_point, "solenoid point (JSON)")
        ->required();
    sol_identify->callback([&] {
        sub_name = "solenoid identify";
        handler = [&]() -> Outcome {
            const json jp = parse_json_arg(s_point, "--point");
            const auto p = heis::io::any_solenoid_from_json(jp);
            Outcome out;
            out.inputs = {{"point", jp}};
            if (const auto* std_pt = std::get_if<heis::solenoid::Point>(&p)) {
                out.results = {{"point",
                                heis::io::solenoid_to_json(
                                    heis::solenoid::standard_to_dilated(
                                        *std_pt))}};
                out.summary = "standard depth " +
                              std::to_string(std_pt->depth()) +
                              " -> dilated depth " +
                              std::to_string(std_pt->depth() / 2);
            } else {
                const auto& dil_pt = std::get<heis::solenoid::DilatedPoint>(p);
                out.results = {{"point", heis::io::solenoid_to_json(
                                             heis::solenoid::dilated_to_standard(
                                                 dil_pt))}};
                out.summary = "dilated depth " +
                              std::to_string(dil_pt.depth()) +
                              " -> standard depth " +
                              std::to_string(dil_pt.depth());
            }
            return out;
        };
    });

    // ---- ccdist / volume -----------------------------------------------------
    auto* cc = make_sub(&app,
        "ccdist", "Carnot-Caratheodory distance estimate from the identity");
    std::string cc_point;
    int cc_n = 1;
    std::size_t cc_m = 64;
    int cc_restarts = 20;
    cc->add_option("--point", cc_point,
                   "target as 2n+1 comma-separated reals x_1..x_n,y_1..y_n,t")
        ->required();
    cc->add_option("--n", cc_n, "dimension")->default_val(1);
    cc->add_option("--m", cc_m, "number of control steps")->default_val(64);
    cc->add_option("--restarts", cc_restarts, "optimizer restarts")
        ->default_val(20);
    cc->add_option("--seed", seed, "random seed")->default_val(0);
    cc->callback([&] {
        sub_name = "ccdist";
        handler = [&]() -> Outcome {
            const std::vector<double> coords = parse_double_list(cc_point);
            if (coords.size() != static_cast<std::size_t>(2 * cc_n + 1)) {
                throw heis::Error("--point needs exactly 2n+1 = " +
                                  std::to_string(2 * cc_n + 1) + " values");
            }
            const std::vector<double> x(coords.begin(), coords.begin() + cc_n);
            const std::vector<double> y(coords.begin() + cc_n,
                                        coords.begin() + 2 * cc_n);
            const heis::subriemannian::RealPoint p(x, y, coords.back());
            const double est = heis::subriemannian::cc_distance_estimate(
                p, cc_m, cc_restarts, seed);
            Outcome out;
            out.inputs = {{"point", cc_point},
                          {"n", cc_n},
                          {"m", cc_m},
                          {"restarts", cc_restarts},
                          {"seed", seed}};
            out.results = {{"estimate", est},
                           {"quasinorm", heis::subriemannian::box_quasinorm(p)},
                           {"endpoint_tolerance", 1e-4}};
            std::ostringstream os;
            os << "cc distance estimate " << est << " (m=" << cc_m
               << ", restarts=" << cc_restarts << ", seed=" << seed << ")";
            out.summary = os.str();
            return out;
        };
    });

    auto* vol = make_sub(&app,
        "volume", "Monte Carlo ball-volume scaling exponent");
    int vol_n = 1;
    double vol_rho = 1.0;
    std::size_t vol_samples = 1000000;
    vol->add_option("--n", vol_n, "dimension")->default_val(1);
    vol->add_option("--rho", vol_rho, "base radius")->default_val(1.0);
    vol->add_option("--samples", vol_samples, "Monte Carlo samples per radius")
        ->default_val(1000000);
    vol->add_option("--seed", seed, "random seed")->default_val(0);
    vol->callback([&] {
        sub_name = "volume";
        handler = [&]() -> Outcome {
            const double exponent = heis::subriemannian::ball_volume_scaling(
                vol_n, vol_rho, vol_samples, seed);
            Outcome out;
            out.inputs = {{"n", vol_n},
                          {"rho", vol_rho},
                          {"samples", vol_samples},
                          {"seed", seed}};
            out.results = {{"exponent", exponent},
                           {"expected", 2 * vol_n + 2}};
            std::ostringstream os;
            os << "ball-volume exponent " << exponent << " (expected "
               << 2 * vol_n + 2 << ")";
            out.summary = os.str();
            return out;
        };
    });

    // ---- verify -----------------------------------------------------------------
    auto* ver = make_sub(&app,
        "verify", "run the property-verification suite");
    std::string ver_scope = "all";
    double ver_tol = 0.05;
    {
        std::vector<std::string> allowed = {"all"};
        for (const std::string& s : heis::verify::scopes()) {
            allowed.push_back(s);
        }
        ver->add_option("--scope", ver_scope, "all or a module scope")
            ->default_val("all")
            ->check(CLI::IsMember(allowed));
    }
    ver->add_option("--seed", seed, "random seed")->default_val(0);
    ver->add_option("--tolerance", ver_tol,
                    "relative tolerance for the numerical scope")
        ->default_val(0.05);
    ver->callback([&] {
        sub_name = "verify";
        handler = [&]() -> Outcome {
            const heis::verify::SuiteResult suite =
                heis::verify::run_scope(ver_scope, seed, ver_tol);
            json props = json::array();
            std::size_t passed = 0;
            std::string failures;
            for (const auto& p : suite.properties) {
                props.push_back({{"scope", p.scope},
                                 {"name", p.name},
                                 {"statement", p.statement},
                                 {"pass", p.pass},
                                 {"detail", p.detail}});
                if (p.pass) {
                    ++passed;
                } else {
                    failures += "\n  FAIL " + p.scope + "/" + p.name + ": " +
                                p.detail;
                }
            }
            Outcome out;
            out.inputs = {{"scope", ver_scope},
                          {"seed", seed},
                          {"tolerance", ver_tol}};
            out.results = {{"all_pass", suite.all_pass()},
                           {"properties", props}};
            out.summary = "verify[" + ver_scope + "]: " +
                          std::to_string(passed) + "/" +
                          std::to_string(suite.properties.size()) +
                          " properties hold (seed " + std::to_string(seed) +
                          ")" + failures;
            out.exit_code = suite.all_pass() ? 0 : 1;
            return out;
        };
    });

    // ---- parse and dispatch ---------------------------------------------------
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = handler();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    }
    const double runtime_ms =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - t0)
            .count();

    const json report = {
        {"subcommand", sub_name},
        {"inputs", out.inputs},
        {"results", out.results},
        {"provenance",
         {{"seed", seed},
          {"version", std::string(heis::kVersion)},
          {"runtime_ms", runtime_ms}}}};
    std::cout << report.dump(2) << std::endl;
    if (!json_only) {
        std::cerr << out.summary << std::endl;
    }
    return out.exit_code;
}
