// Command-line driver: validation, homology and Morse-complex reports,
// induced gradients on the order complex, sublevel verification, random
// instance generation, and graph export.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include <openmorse/openmorse.hpp>

namespace om = openmorse;
using om::json;

namespace {

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) om::fail(om::errc::parse_error, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        om::fail(om::errc::parse_error, path + ": " + e.what());
    }
}

om::input_documents load_inputs(const std::vector<std::string>& paths) {
    std::vector<json> docs;
    for (const auto& p : paths) docs.push_back(load_file(p));
    return om::parse_inputs(docs);
}

std::string cell_name(const om::input_documents& in, const om::simplex& c) {
    std::string s = "{";
    for (size_t i = 0; i < c.v.size(); ++i) {
        if (i) s += ",";
        s += om::display_vertex(in, c.v[i]);
    }
    return s + "}";
}

std::string chain_name(const om::input_documents& in, const om::sd_complex& sd,
                       const om::simplex& chain) {
    std::string s;
    for (size_t i = 0; i < chain.v.size(); ++i) {
        if (i) s += "<";
        s += cell_name(in, sd.base.cells[static_cast<size_t>(chain.v[i])]);
    }
    return s;
}

json betti_json(const std::vector<int>& b) {
    json out = json::array();
    for (int x : b) out.push_back(x);
    return out;
}

json homology_json(const om::homology_result& h) {
    json out;
    out["betti"] = betti_json(h.betti);
    out["torsion"] = json::array();
    for (const auto& t : h.torsion) {
        json row = json::array();
        for (long long f : t) row.push_back(f);
        out["torsion"].push_back(row);
    }
    return out;
}

json bm_json(const om::bm_verification& rep) {
    json out;
    out["per_dim"] = json::array();
    for (const auto& row : rep.rows) {
        json r;
        r["dim"] = row.dim;
        r["critical"] = row.critical;
        r["betti_morse"] = row.betti_morse;
        r["betti_relative"] = row.betti_relative;
        json tm = json::array(), tr = json::array();
        for (long long f : row.torsion_morse) tm.push_back(f);
        for (long long f : row.torsion_relative) tr.push_back(f);
        r["torsion_morse"] = tm;
        r["torsion_relative"] = tr;
        r["weak_inequality_ok"] = row.weak_inequality_ok;
        out["per_dim"].push_back(r);
    }
    out["equal"] = rep.equal;
    out["inequalities_ok"] = rep.inequalities_ok;
    out["pass"] = rep.pass();
    return out;
}

struct pipeline {
    om::input_documents in;
    om::gradient_field v_k;
    om::morse_function f_x;
    om::sd_complex sd;
    om::induced_gradient ind;
    om::restricted_gradient w;
    om::morse_function f_sd;
};

pipeline build_pipeline(const std::vector<std::string>& paths) {
    pipeline pl{load_inputs(paths), {}, {}, {}, {}, {}, {}};
    pl.v_k = pl.in.field();
    pl.f_x = pl.in.has_function() ? om::function_on_x(pl.in)
                                  : om::function_from_gradient(om::extend_to_pair(pl.v_k, pl.in.pair));
    pl.sd = om::subdivide_pair(pl.in.pair);
    pl.ind = om::induce(pl.in.pair, pl.v_k, pl.f_x, pl.sd);
    pl.w = om::restrict_to_order_complex(pl.ind, pl.sd);
    pl.f_sd = om::extend_function(pl.f_x, pl.ind, pl.v_k, pl.in.pair, pl.sd);
    return pl;
}

// correspondence between critical cells upstairs and downstairs
json correspondence_json(const pipeline& pl, bool* ok_out) {
    json out;
    const auto& p = pl.in.pair;
    om::gradient_field v_x = om::extend_to_pair(pl.v_k, p);
    int base_crit = 0;
    for (int n : om::critical_counts(v_x)) base_crit += n;
    int sd_crit = 0;
    for (int i = 0; i < pl.sd.cells.size(); ++i)
        if (pl.ind.partner[static_cast<size_t>(i)] < 0) ++sd_crit;
    bool ok = base_crit == sd_crit;

    json cells = json::array();
    auto k_heights = om::heights(p.k);
    for (int y = 0; y < p.x.size(); ++y) {
        size_t yy = static_cast<size_t>(y);
        if (pl.ind.vprime_of_base[yy] < 0) continue;
        const om::simplex& base = p.x.cells[yy];
        const om::simplex& up = pl.sd.cells.cells[static_cast<size_t>(pl.ind.vprime_of_base[yy])];
        bool cell_ok = up.dim() == base.dim() && up.v.back() == y;
        json row;
        row["base"] = cell_name(pl.in, base);
        row["critical_cell"] = chain_name(pl.in, pl.sd, up);
        if (pl.ind.tracked_of_base[yy] >= 0) {
            const om::simplex& tr = pl.sd.cells.cells[static_cast<size_t>(pl.ind.tracked_of_base[yy])];
            int h = k_heights[static_cast<size_t>(p.k.index_of(base))];
            bool in_w_critical =
                pl.ind.partner[static_cast<size_t>(pl.ind.tracked_of_base[yy])] < 0 ||
                !pl.sd.in_sk[static_cast<size_t>(
                    pl.ind.partner[static_cast<size_t>(pl.ind.tracked_of_base[yy])])];
            cell_ok = cell_ok && tr.dim() == h && tr.v.back() == y && in_w_critical;
            row["order_complex_cell"] = chain_name(pl.in, pl.sd, tr);
            row["height"] = h;
        }
        row["ok"] = cell_ok;
        ok = ok && cell_ok;
        cells.push_back(row);
    }
    out["critical_base"] = base_crit;
    out["critical_subdivision"] = sd_crit;
    out["cells"] = cells;
    out["pass"] = ok;
    *ok_out = ok;
    return out;
}

json scan_json(const pipeline& pl, const om::filtration_report& scan) {
    json out;
    out["critical_values"] = json::array();
    for (double v : scan.critical_values) out["critical_values"].push_back(v);
    out["events"] = json::array();
    for (const auto& ev : scan.events) {
        if (ev.kind == "noop") continue;
        json e;
        e["value"] = ev.value;
        e["kind"] = ev.kind;
        e["cell"] = chain_name(pl.in, pl.sd, pl.sd.cells.cells[static_cast<size_t>(ev.cell)]);
        e["dim"] = ev.dim;
        e["betti_before"] = betti_json(ev.betti_before);
        e["betti_after"] = betti_json(ev.betti_after);
        out["events"].push_back(e);
    }
    out["attach_per_dim"] = betti_json(scan.attach_per_dim);
    out["pass"] = scan.ok;
    if (!scan.ok) out["failure"] = scan.failure;
    return out;
}

json retract_sweep_json(const pipeline& pl, bool* ok_out) {
    std::vector<double> vals = pl.f_sd.values;
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    std::vector<double> thresholds;
    if (!vals.empty()) {
        thresholds.push_back(vals.front() - 1.0);
        for (size_t i = 0; i + 1 < vals.size(); ++i)
            thresholds.push_back((vals[i] + vals[i + 1]) / 2.0);
        thresholds.push_back(vals.back() + 1.0);
    }
    bool ok = true;
    json out;
    out["thresholds"] = static_cast<int>(thresholds.size());
    for (double a : thresholds) {
        auto ls = om::open_level(pl.sd, pl.f_sd.values, a);
        auto rep = om::retract_check(pl.sd, pl.ind, pl.f_sd.values, ls);
        if (!rep.ok) {
            ok = false;
            out["stuck_threshold"] = a;
            out["stuck_cell"] = chain_name(
                pl.in, pl.sd, pl.sd.cells.cells[static_cast<size_t>(rep.stuck_cell)]);
            break;
        }
    }
    out["pass"] = ok;
    *ok_out = ok;
    return out;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int exit_code_for(const om::error& e) {
    switch (e.code()) {
    case om::errc::parse_error:
    case om::errc::empty_generator:
    case om::errc::duplicate_vertex:
    case om::errc::not_subcomplex:
    case om::errc::not_in_complex:
    case om::errc::dimension_mismatch:
    case om::errc::not_morse:
    case om::errc::cyclic_field:
    case om::errc::preset_conflict:
        return 2;
    default:
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete Morse theory on open simplicial complexes"};
    app.require_subcommand(1);

    std::vector<std::string> files;
    std::string coeff = "z";
    std::string target = "k";
    std::string format;
    double threshold = 0;
    bool has_threshold = false;
    double from_val = 0, to_val = 0;
    bool has_from = false, has_to = false;
    std::uint64_t seed = 0;
    int vmax = 8, dim = 3, jobs = 1;
    bool timings = false;

    auto add_common = [&](CLI::App* sub, bool needs_file) {
        auto* opt = sub->add_option("files", files, "input documents");
        if (needs_file) opt->required();
        sub->add_flag("--timings", timings, "include wall-clock timings in the report");
        return sub;
    };

    auto* c_validate = add_common(app.add_subcommand("validate", "check inputs"), true);
    auto* c_critical = add_common(app.add_subcommand("critical", "critical cells of the field"), true);
    auto* c_induce = add_common(app.add_subcommand("induce", "induced gradient on the order complex"), true);
    auto* c_function = add_common(app.add_subcommand("function", "build a Morse function from the field"), true);
    auto* c_homology = add_common(app.add_subcommand("homology", "homology of the pair and its order complex"), true);
    c_homology->add_option("--coeff", coeff, "z or z2")->check(CLI::IsMember({"z", "z2"}));
    auto* c_bm = add_common(app.add_subcommand("bm", "Borel-Moore comparison report"), true);
    auto* c_morse = add_common(app.add_subcommand("morse", "Morse complex of the field"), true);
    c_morse->add_option("--coeff", coeff, "z or z2")->check(CLI::IsMember({"z", "z2"}));
    auto* c_verify = add_common(app.add_subcommand("verify", "full verification suite"), true);
    c_verify->add_option("--jobs", jobs, "parallel checks (accepted, checks run sequentially)");
    auto* c_filtration = add_common(app.add_subcommand("filtration", "sublevel scan"), true);
    c_filtration->add_option("--threshold", threshold, "report one level set")->each([&](const std::string&) { has_threshold = true; });
    c_filtration->add_option("--from", from_val, "window start")->each([&](const std::string&) { has_from = true; });
    c_filtration->add_option("--to", to_val, "window end")->each([&](const std::string&) { has_to = true; });
    auto* c_gen = app.add_subcommand("gen", "random pair and acyclic field");
    c_gen->add_option("--seed", seed, "random seed");
    c_gen->add_option("--vmax", vmax, "max vertex count");
    c_gen->add_option("--dim", dim, "max generator dimension");
    auto* c_export = add_common(app.add_subcommand("export-dot", "graph-description export"), true);
    c_export->add_option("--target", target, "k, x, or sk")->check(CLI::IsMember({"k", "x", "sk"}));
    c_export->add_option("--format", format, "json or dot")->check(CLI::IsMember({"json", "dot"}));

    CLI11_PARSE(app, argc, argv);
    auto started = std::chrono::steady_clock::now();

    try {
        if (c_gen->parsed()) {
            om::generated_instance gi = om::generate_instance({seed, vmax, dim});
            json out;
            out["X"] = json::array();
            for (const auto& g : gi.x_generators) out["X"].push_back(g);
            out["T"] = json::array();
            for (const auto& g : gi.t_generators) out["T"].push_back(g);
            out["pairs"] = json::array();
            for (const auto& [a, b] : gi.field_pairs) out["pairs"].push_back(json::array({a, b}));
            emit(out);
            return 0;
        }

        if (c_validate->parsed()) {
            auto in = load_inputs(files);
            json out;
            out["cells"] = {{"x", in.pair.x.size()}, {"t", in.pair.t.size()}, {"k", in.pair.k.size()}};
            bool ok = true;
            if (in.field_raw) {
                auto viols = om::validate_field(*in.field_raw);
                json fv = json::array();
                for (const auto& v : viols)
                    fv.push_back({{"kind", v.kind}, {"cell", cell_name(in, v.a)}});
                bool acyclic = viols.empty() ? om::is_acyclic(*in.field_raw) : false;
                out["field"] = {{"violations", fv}, {"acyclic", acyclic}};
                ok = ok && viols.empty() && acyclic;
            }
            if (in.values_raw) {
                om::morse_function f = om::complete_function_on_pair(in.pair, *in.values_raw);
                auto [rep, grad] = om::validate_function(f);
                json fv = json::array();
                for (const auto& v : rep.violations)
                    fv.push_back({{"condition", v.condition}, {"cell", cell_name(in, v.cell)}});
                out["function"] = {{"violations", fv}, {"ok", rep.ok()}};
                if (rep.ok()) {
                    json pairs = json::array();
                    for (const auto& [a, b] : grad.field.pairs)
                        pairs.push_back(json::array({cell_name(in, a), cell_name(in, b)}));
                    out["function"]["induced_pairs"] = pairs;
                }
                ok = ok && rep.ok();
            }
            out["pass"] = ok;
            emit(out);
            return ok ? 0 : 1;
        }

        if (c_critical->parsed()) {
            auto in = load_inputs(files);
            auto g = in.field();
            auto cc = om::critical_cells(g);
            json out;
            out["counts"] = json::array();
            out["cells"] = json::array();
            for (size_t d = 0; d < cc.size(); ++d) {
                out["counts"].push_back(static_cast<int>(cc[d].size()));
                for (const auto& c : cc[d])
                    out["cells"].push_back({{"cell", cell_name(in, c)},
                                            {"dim", static_cast<int>(d)},
                                            {"height", om::height(c, in.pair.k)}});
            }
            emit(out);
            return 0;
        }

        if (c_function->parsed()) {
            auto in = load_inputs(files);
            auto g = in.field();
            auto v_x = om::extend_to_pair(g, in.pair);
            std::map<om::simplex, double> presets;
            if (in.values_raw) presets = *in.values_raw;
            auto f = om::function_from_gradient(v_x, presets);
            json out;
            out["values"] = json::array();
            for (int i = 0; i < f.domain.size(); ++i)
                out["values"].push_back(json::array(
                    {cell_to_json(in, f.domain.cells[static_cast<size_t>(i)]), f.values[static_cast<size_t>(i)]}));
            emit(out);
            return 0;
        }

        if (c_homology->parsed()) {
            auto in = load_inputs(files);
            auto sd = om::subdivide_pair(in.pair);
            json out;
            if (coeff == "z2") {
                out["x"] = betti_json(om::homology_z2(om::simplicial_chain(in.pair.x)));
                out["t"] = betti_json(om::homology_z2(om::simplicial_chain(in.pair.t)));
                out["relative"] = betti_json(om::homology_z2(om::relative_chain(in.pair)));
                out["order_complex"] = betti_json(om::homology_z2(om::simplicial_chain(om::order_complex(sd))));
            } else {
                out["x"] = homology_json(om::homology(om::simplicial_chain(in.pair.x)));
                out["t"] = homology_json(om::homology(om::simplicial_chain(in.pair.t)));
                out["relative"] = homology_json(om::homology(om::relative_chain(in.pair)));
                out["order_complex"] = homology_json(om::homology(om::simplicial_chain(om::order_complex(sd))));
            }
            emit(out);
            return 0;
        }

        if (c_bm->parsed()) {
            auto in = load_inputs(files);
            auto rep = om::bm_report(in.pair, in.field());
            json out = bm_json(rep);
            emit(out);
            return rep.pass() ? 0 : 1;
        }

        if (c_morse->parsed()) {
            auto in = load_inputs(files);
            auto field = in.field();
            auto mc = om::morse_complex(field, coeff == "z2" ? om::coefficient_ring::z2
                                                             : om::coefficient_ring::z);
            auto crit = om::critical_cells(field);
            json out;
            out["basis"] = json::array();
            out["boundary"] = json::array();
            for (size_t d = 0; d < mc.basis.size(); ++d) {
                json names = json::array();
                if (d < crit.size())
                    for (const auto& c : crit[d]) names.push_back(cell_name(in, c));
                out["basis"].push_back(names);
                const auto& m = mc.boundary[d];
                json rows = json::array();
                for (int i = 0; i < m.rows; ++i) {
                    json row = json::array();
                    for (int j = 0; j < m.cols; ++j) row.push_back(m.at(i, j));
                    rows.push_back(row);
                }
                out["boundary"].push_back(rows);
            }
            if (coeff == "z2")
                out["homology"] = betti_json(om::homology_z2(mc));
            else
                out["homology"] = homology_json(om::homology(mc));
            emit(out);
            return 0;
        }

        if (c_induce->parsed()) {
            auto pl = build_pipeline(files);
            json out;
            bool zok = false;
            out["correspondence"] = correspondence_json(pl, &zok);
            out["w_critical_counts"] = betti_json(pl.w.critical_counts_by_dim());
            json orphaned = json::array(), inherited = json::array();
            for (const auto& c : pl.w.orphaned) orphaned.push_back(chain_name(pl.in, pl.sd, c));
            for (const auto& c : pl.w.inherited) inherited.push_back(chain_name(pl.in, pl.sd, c));
            out["orphaned"] = orphaned;
            out["inherited"] = inherited;
            emit(out);
            return zok ? 0 : 1;
        }

        if (c_filtration->parsed()) {
            auto pl = build_pipeline(files);
            json out;
            if (has_threshold) {
                auto ls = om::open_level(pl.sd, pl.f_sd.values, threshold);
                int nk = 0, nska = 0, nsdxa = 0;
                for (int i = 0; i < pl.sd.cells.size(); ++i) {
                    nk += ls.in_ka[static_cast<size_t>(i)];
                    nska += ls.in_ska[static_cast<size_t>(i)];
                    nsdxa += ls.in_sdxa[static_cast<size_t>(i)];
                }
                auto rr = om::retract_check(pl.sd, pl.ind, pl.f_sd.values, ls);
                out["level"] = {{"threshold", threshold},
                                {"k_cells", nk},
                                {"order_complex_cells", nska},
                                {"subdivision_cells", nsdxa},
                                {"retract_ok", rr.ok}};
            }
            auto scan = om::structure_scan(pl.sd, pl.ind, pl.f_sd.values);
            json sj = scan_json(pl, scan);
            if (has_from || has_to) {
                json filtered = json::array();
                for (const auto& ev : sj["events"])
                    if ((!has_from || ev["value"].get<double>() >= from_val) &&
                        (!has_to || ev["value"].get<double>() <= to_val))
                        filtered.push_back(ev);
                sj["events"] = filtered;
            }
            out["scan"] = sj;
            emit(out);
            return scan.ok ? 0 : 1;
        }

        if (c_verify->parsed()) {
            auto pl = build_pipeline(files);
            json out;
            auto bm = om::bm_report(pl.in.pair, pl.v_k);
            out["bm"] = bm_json(bm);
            bool zok = false;
            out["correspondence"] = correspondence_json(pl, &zok);
            out["order_complex"] = {
                {"w_critical_counts", betti_json(pl.w.critical_counts_by_dim())},
                {"homology", homology_json(om::homology(om::simplicial_chain(om::order_complex(pl.sd))))}};
            auto scan = om::structure_scan(pl.sd, pl.ind, pl.f_sd.values);
            out["scan"] = scan_json(pl, scan);
            bool rok = false;
            out["retract"] = retract_sweep_json(pl, &rok);
            bool pass = bm.pass() && zok && scan.ok && rok;
            out["pass"] = pass;
            if (timings) {
                auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - started)
                              .count();
                out["timing_ms"] = ms;
            }
            emit(out);
            return pass ? 0 : 1;
        }

        if (c_export->parsed()) {
            auto in = load_inputs(files);
            std::string dot;
            if (target == "sk") {
                auto pl = build_pipeline(files);
                auto sk = om::order_complex(pl.sd);
                dot = om::export_dot(sk, &pl.w.field, [&](const om::simplex& c) {
                    return chain_name(pl.in, pl.sd, c);
                });
            } else {
                const om::cell_set& dom = (target == "x") ? in.pair.x : in.pair.k;
                std::optional<om::gradient_field> g;
                if (in.has_field())
                    g = (target == "x") ? om::extend_to_pair(in.field(), in.pair) : in.field();
                dot = om::export_dot(dom, g ? &*g : nullptr,
                                     [&](const om::simplex& c) { return cell_name(in, c); });
            }
            if (format == "json")
                emit(json{{"dot", dot}});
            else
                std::cout << dot;
            return 0;
        }
    } catch (const om::error& e) {
        std::cerr << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
