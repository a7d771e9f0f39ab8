#include "mzi/figures.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

#include "mzi/version.hpp"

namespace mzi {

namespace {

SweepConfig phi_curve(StateKind kind, int ops, double r, double nz, double lo, double hi,
                      std::string label) {
    SweepConfig c;
    c.base = Scenario(StateSpec(kind, r, ops), nz);
    c.axis = SweepAxis::Phi;
    c.start = lo;
    c.stop = hi;
    c.count = 401;
    c.label = std::move(label);
    return c;
}

SweepConfig phi_curve_nbar(StateKind kind, int ops, double nbar, double nz, double lo, double hi,
                           std::string label) {
    SweepConfig c;
    c.base = Scenario(StateSpec(kind, 0.0, ops), nz);
    c.target_nbar = nbar;
    c.axis = SweepAxis::Phi;
    c.start = lo;
    c.stop = hi;
    c.count = 401;
    c.label = std::move(label);
    return c;
}

SweepConfig nbar_curve(StateKind kind, int ops, Constraint constraint, double pin, double nz_probe,
                       double phi, double lo, double hi, std::string label) {
    SweepConfig c;
    c.base = Scenario(StateSpec(kind, constraint == Constraint::FixR ? pin : 0.0, ops), nz_probe);
    if (constraint == Constraint::FixNbarSqueezed) c.target_nbar = pin;
    c.axis = SweepAxis::TotalNbar;
    c.constraint = constraint;
    c.start = lo;
    c.stop = hi;
    c.count = 401;
    c.log_spacing = true;
    c.phi = phi;
    c.label = std::move(label);
    return c;
}

std::string family_tag(StateKind kind, int ops) {
    if (kind == StateKind::Plain) return "plain";
    return (kind == StateKind::Added ? "added" : "sub") + std::to_string(ops);
}

FigureSpec make_fig1a() {
    // squeezed-port mean photon number against the operation count, fixed r
    FigureSpec f{"fig1a", "mean photon number vs number of operations, r = 0.9", {}};
    for (StateKind kind : {StateKind::Added, StateKind::Subtracted}) {
        SweepConfig c;
        c.base = Scenario(StateSpec(kind, 0.9, 0), 0.0);
        c.axis = SweepAxis::Ops;
        c.start = 0.0;
        c.stop = 6.0;
        c.count = 7;
        c.phi = 1e-4;
        c.label = kind == StateKind::Added ? "added" : "subtracted";
        f.curves.push_back(c);
    }
    return f;
}

FigureSpec make_fig1b() {
    FigureSpec f{"fig1b", "mean photon number vs squeezing parameter", {}};
    auto r_curve = [](StateKind kind, int ops, std::string label) {
        SweepConfig c;
        c.base = Scenario(StateSpec(kind, 0.01, ops), 0.0);
        c.axis = SweepAxis::R;
        c.start = 0.01;  // subtracted states degenerate exactly at r = 0
        c.stop = 2.0;
        c.count = 401;
        c.phi = 1e-4;
        c.label = std::move(label);
        return c;
    };
    f.curves.push_back(r_curve(StateKind::Plain, 0, "plain"));
    for (int m : {1, 2, 3}) {
        f.curves.push_back(r_curve(StateKind::Added, m, family_tag(StateKind::Added, m)));
        f.curves.push_back(r_curve(StateKind::Subtracted, m, family_tag(StateKind::Subtracted, m)));
    }
    return f;
}

FigureSpec make_fig2a() {
    FigureSpec f{"fig2a", "parity signal vs phase, r = 0.3, nz = 4", {}};
    f.curves.push_back(phi_curve(StateKind::Plain, 0, 0.3, 4.0, -3.2, 3.2, "plain"));
    for (int m : {1, 2, 3}) {
        f.curves.push_back(phi_curve(StateKind::Added, m, 0.3, 4.0, -3.2, 3.2,
                                     family_tag(StateKind::Added, m)));
        f.curves.push_back(phi_curve(StateKind::Subtracted, m, 0.3, 4.0, -3.2, 3.2,
                                     family_tag(StateKind::Subtracted, m)));
    }
    return f;
}

FigureSpec make_fig2b() {
    // added curve at r = 0.3 against a subtracted curve carrying the same
    // mean photon number, m = 2 and 3
    FigureSpec f{"fig2b", "parity at equal mean photon number, added vs subtracted", {}};
    for (int m : {2, 3}) {
        f.curves.push_back(phi_curve(StateKind::Added, m, 0.3, 4.0, -3.2, 3.2,
                                     family_tag(StateKind::Added, m)));
        double nb = mean_photon_number(StateSpec(StateKind::Added, 0.3, m));
        f.curves.push_back(phi_curve_nbar(StateKind::Subtracted, m, nb, 4.0, -3.2, 3.2,
                                          family_tag(StateKind::Subtracted, m) + "_matched"));
    }
    return f;
}

FigureSpec make_fig3(const std::string& id, double nbar) {
    FigureSpec f{id, "phase uncertainty vs phase, equal port means " + std::to_string(nbar), {}};
    f.curves.push_back(phi_curve_nbar(StateKind::Plain, 0, nbar, nbar, 1e-4, 0.2, "plain"));
    for (int m : {1, 2}) {
        f.curves.push_back(phi_curve_nbar(StateKind::Added, m, nbar, nbar, 1e-4, 0.2,
                                          family_tag(StateKind::Added, m)));
        f.curves.push_back(phi_curve_nbar(StateKind::Subtracted, m, nbar, nbar, 1e-4, 0.2,
                                          family_tag(StateKind::Subtracted, m)));
    }
    return f;
}

FigureSpec make_fig4a() {
    FigureSpec f{"fig4a", "phase uncertainty vs phase, r = 0.9, nz = 100", {}};
    f.curves.push_back(phi_curve(StateKind::Plain, 0, 0.9, 100.0, 1e-4, 0.1, "plain"));
    for (int m : {1, 2}) {
        f.curves.push_back(
            phi_curve(StateKind::Added, m, 0.9, 100.0, 1e-4, 0.1, family_tag(StateKind::Added, m)));
        f.curves.push_back(phi_curve(StateKind::Subtracted, m, 0.9, 100.0, 1e-4, 0.1,
                                     family_tag(StateKind::Subtracted, m)));
    }
    return f;
}

FigureSpec make_fig4b() {
    FigureSpec f{"fig4b", "phase uncertainty vs phase, family mean 16, nz = 100", {}};
    f.curves.push_back(phi_curve_nbar(StateKind::Plain, 0, 16.0, 100.0, 1e-4, 0.1, "plain"));
    for (int m : {1, 2}) {
        f.curves.push_back(phi_curve_nbar(StateKind::Added, m, 16.0, 100.0, 1e-4, 0.1,
                                          family_tag(StateKind::Added, m)));
        f.curves.push_back(phi_curve_nbar(StateKind::Subtracted, m, 16.0, 100.0, 1e-4, 0.1,
                                          family_tag(StateKind::Subtracted, m)));
    }
    return f;
}

FigureSpec make_fig56(const std::string& id, double phi) {
    // each curve pins its own squeezed-port mean and only the coherent power
    // moves along the axis; m = 6 states cannot sit below mean 6, so those
    // two curves carry mean 8 and start a little higher
    FigureSpec f{id, "phase uncertainty vs total photon number, squeezed-port mean pinned", {}};
    f.curves.push_back(nbar_curve(StateKind::Plain, 0, Constraint::FixNbarSqueezed, 4.0, 1.0, phi,
                                  4.5, 200.0, "plain"));
    for (int m : {1, 2, 3, 6}) {
        const double pin = (m == 6) ? 8.0 : 4.0;
        const double lo = (m == 6) ? 8.5 : 4.5;
        f.curves.push_back(nbar_curve(StateKind::Added, m, Constraint::FixNbarSqueezed, pin, 1.0,
                                      phi, lo, 200.0, family_tag(StateKind::Added, m)));
        f.curves.push_back(nbar_curve(StateKind::Subtracted, m, Constraint::FixNbarSqueezed, pin,
                                      1.0, phi, lo, 200.0, family_tag(StateKind::Subtracted, m)));
    }
    return f;
}

FigureSpec make_fig7() {
    // r pinned at 0.9 so the added-state port mean grows with m; the range
    // starts above the largest port mean (added m = 3 sits near 10.6)
    FigureSpec f{"fig7", "phase uncertainty vs total photon number, r = 0.9", {}};
    f.curves.push_back(
        nbar_curve(StateKind::Plain, 0, Constraint::FixR, 0.9, 1.0, 1e-4, 12.0, 200.0, "plain"));
    for (int m : {1, 2, 3}) {
        f.curves.push_back(nbar_curve(StateKind::Added, m, Constraint::FixR, 0.9, 1.0, 1e-4, 12.0,
                                      200.0, family_tag(StateKind::Added, m)));
        f.curves.push_back(nbar_curve(StateKind::Subtracted, m, Constraint::FixR, 0.9, 1.0, 1e-4,
                                      12.0, 200.0, family_tag(StateKind::Subtracted, m)));
    }
    return f;
}

// parity figures plot column 4, photon-number figures column 3, the rest
// plot the uncertainty in column 6
int plot_column(const std::string& id) {
    if (id == "fig1a" || id == "fig1b") return 3;
    if (id == "fig2a" || id == "fig2b") return 4;
    return 6;
}

} // namespace

std::vector<std::string> figure_ids() {
    return {"fig1a", "fig1b", "fig2a", "fig2b", "fig3a", "fig3b",
            "fig4a", "fig4b", "fig5",  "fig6",  "fig7"};
}

FigureSpec figure_spec(const std::string& id) {
    if (id == "fig1a") return make_fig1a();
    if (id == "fig1b") return make_fig1b();
    if (id == "fig2a") return make_fig2a();
    if (id == "fig2b") return make_fig2b();
    if (id == "fig3a") return make_fig3("fig3a", 4.0);
    if (id == "fig3b") return make_fig3("fig3b", 16.0);
    if (id == "fig4a") return make_fig4a();
    if (id == "fig4b") return make_fig4b();
    if (id == "fig5") return make_fig56("fig5", 1e-4);
    if (id == "fig6") return make_fig56("fig6", 0.015);
    if (id == "fig7") return make_fig7();
    throw std::invalid_argument("unknown figure id: " + id);
}

std::vector<std::string> reproduce_figure(const std::string& id, const std::string& out_dir,
                                          bool emit_gnuplot) {
    FigureSpec fig = figure_spec(id);
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    std::vector<std::string> written;
    nlohmann::ordered_json manifest;
    manifest["version"] = kVersion;
    manifest["figure"] = fig.id;
    manifest["title"] = fig.title;
    manifest["curves"] = nlohmann::ordered_json::array();

    std::vector<std::string> csv_names;
    for (const SweepConfig& cfg : fig.curves) {
        SweepResult res = run_scenario_sweep(cfg);
        std::string name = fig.id + "_" + cfg.label + ".csv";
        fs::path path = fs::path(out_dir) / name;
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << to_csv(res);
        written.push_back(path.string());
        csv_names.push_back(name);
        manifest["curves"].push_back(nlohmann::ordered_json::parse(to_manifest_json(res)));
        manifest["curves"].back()["file"] = name;
    }

    fs::path mpath = fs::path(out_dir) / (fig.id + "_manifest.json");
    {
        std::ofstream out(mpath);
        if (!out) throw std::runtime_error("cannot write " + mpath.string());
        out << manifest.dump(2) << '\n';
    }
    written.push_back(mpath.string());

    if (emit_gnuplot) {
        fs::path gpath = fs::path(out_dir) / (fig.id + ".gp");
        std::ofstream out(gpath);
        if (!out) throw std::runtime_error("cannot write " + gpath.string());
        int col = plot_column(fig.id);
        out << "set datafile separator ','\n";
        out << "set title \"" << fig.title << "\"\n";
        if (!fig.curves.empty() && fig.curves.front().log_spacing) out << "set logscale x\n";
        if (col == 6) out << "set logscale y\n";
        out << "plot \\\n";
        for (size_t i = 0; i < csv_names.size(); ++i) {
            out << "  '" << csv_names[i] << "' using 1:" << col << " with lines title '"
                << fig.curves[i].label << "'";
            out << (i + 1 < csv_names.size() ? ", \\\n" : "\n");
        }
        written.push_back(gpath.string());
    }
    return written;
}

} // namespace mzi
