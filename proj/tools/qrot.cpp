#include "qrot/circuit.hpp"
#include "qrot/factor.hpp"
#include "qrot/families.hpp"
#include "qrot/funcspec.hpp"
#include "qrot/sim.hpp"
#include "qrot/synth.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rotation-gate synthesis toolkit"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "Synthesize a circuit from a function spec");
    std::string spec_path, out_path, stats_path, order_csv;
    bool no_restore = false, no_inplace = false, show_form = false;
    synth->add_option("spec", spec_path, "function spec file")->required();
    synth->add_option("-o,--output", out_path, "circuit file to write");
    synth->add_option("--stats", stats_path, "write the stats report here");
    synth->add_option("--order", order_csv, "comma-separated variable order override");
    synth->add_flag("--no-restore", no_restore, "leave input lines transformed");
    synth->add_flag("--no-inplace", no_inplace, "never consume an input line as the target");
    synth->add_flag("--show-form", show_form, "print the factored form per output");
    std::string dump_dot_path;
    synth->add_option("--dump-dot", dump_dot_path, "write each output's diagram as DOT here");

    // verify
    auto* verify = app.add_subcommand("verify", "Check a circuit file against a spec");
    std::string v_circuit, v_spec;
    verify->add_option("circuit", v_circuit, "circuit file")->required();
    verify->add_option("spec", v_spec, "function spec file")->required();

    // stats
    auto* stats_cmd = app.add_subcommand("stats", "Print the stats report of a circuit file");
    std::string s_circuit;
    stats_cmd->add_option("circuit", s_circuit, "circuit file")->required();

    // family
    auto* family = app.add_subcommand("family", "Generate a benchmark family circuit");
    family->require_subcommand(1);
    int controls = 0, bits = 0, inputs = 0, qubits = 0;
    bool predict_only = false;
    std::string f_out, f_stats;
    auto add_family_common = [&](CLI::App* sub) {
        sub->add_flag("--predict", predict_only, "print the cost prediction only");
        sub->add_option("-o,--output", f_out, "circuit file to write");
        sub->add_option("--stats", f_stats, "write the stats report here");
    };
    auto* toffoli = family->add_subcommand("toffoli", "multi-control Toffoli");
    toffoli->add_option("--controls", controls, "control count")->required();
    add_family_common(toffoli);
    auto* adder = family->add_subcommand("adder", "ripple-carry adder");
    adder->add_option("--bits", bits, "operand width")->required();
    add_family_common(adder);
    auto* mux = family->add_subcommand("mux", "quantum multiplexer");
    mux->add_option("--inputs", inputs, "data input count (power of two)")->required();
    add_family_common(mux);
    auto* qft = family->add_subcommand("qft", "quantum Fourier transform");
    qft->add_option("--qubits", qubits, "qubit count")->required();
    add_family_common(qft);

    // export-dot
    auto* dot = app.add_subcommand("export-dot", "Dump the diagram of each spec output as DOT");
    std::string d_spec, d_out;
    dot->add_option("spec", d_spec, "function spec file")->required();
    dot->add_option("-o,--output", d_out, "file to write (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*synth) {
            qrot::FunctionSpec spec = qrot::parse_spec(slurp(spec_path));
            qrot::SynthOptions opts;
            opts.order = split_csv(order_csv);
            opts.restore_inputs = !no_restore;
            opts.inplace_target = !no_inplace;
            qrot::SynthResult res = qrot::synth_spec(spec, opts);
            if (!dump_dot_path.empty()) {
                qrot::Manager mgr(spec.vars);
                std::ostringstream os;
                for (const auto& out : spec.outputs) {
                    qrot::Diagram d = mgr.from_table(out.rx);
                    os << "// output " << out.name << "\n" << mgr.to_dot(d);
                }
                spill(dump_dot_path, os.str());
            }
            if (show_form)
                for (size_t i = 0; i < res.forms.size(); ++i)
                    std::cout << spec.outputs[i].name << " = " << res.forms[i] << "\n";
            std::string text = qrot::write_text(res.circuit);
            if (out_path.empty())
                std::cout << text;
            else
                spill(out_path, text);
            std::string report = qrot::stats_json(res.statistics);
            if (!stats_path.empty())
                spill(stats_path, report + "\n");
            else
                std::cerr << report << "\n";
            return 0;
        }
        if (*verify) {
            qrot::Circuit c = qrot::read_text(slurp(v_circuit));
            qrot::FunctionSpec spec = qrot::parse_spec(slurp(v_spec));
            qrot::Verdict v = qrot::verify_circuit(c, spec);
            std::cout << qrot::verdict_json(v) << "\n";
            return v.pass ? 0 : 1;
        }
        if (*stats_cmd) {
            qrot::Circuit c = qrot::read_text(slurp(s_circuit));
            std::cout << qrot::stats_json(qrot::stats(c)) << "\n";
            return 0;
        }
        if (*family) {
            qrot::FamilyId id{};
            if (*toffoli) id = {qrot::FamilyId::Kind::Toffoli, controls};
            if (*adder) id = {qrot::FamilyId::Kind::Adder, bits};
            if (*mux) id = {qrot::FamilyId::Kind::Mux, inputs};
            if (*qft) id = {qrot::FamilyId::Kind::Qft, qubits};
            if (predict_only) {
                qrot::CostPrediction p = qrot::predict(id);
                std::cout << "{\"two_qubit\": " << p.two_qubit << ", \"ancillae\": " << p.ancillae;
                if (p.depth_bound) std::cout << ", \"depth_bound\": " << *p.depth_bound;
                std::cout << "}\n";
                return 0;
            }
            qrot::Circuit c = qrot::generate(id);
            std::string text = qrot::write_text(c);
            if (f_out.empty())
                std::cout << text;
            else
                spill(f_out, text);
            std::string report = qrot::stats_json(qrot::stats(c));
            if (!f_stats.empty())
                spill(f_stats, report + "\n");
            else
                std::cerr << report << "\n";
            return 0;
        }
        if (*dot) {
            qrot::FunctionSpec spec = qrot::parse_spec(slurp(d_spec));
            qrot::Manager mgr(spec.vars);
            std::ostringstream os;
            for (const auto& out : spec.outputs) {
                qrot::Diagram d = mgr.from_table(out.rx);
                os << "// output " << out.name << "\n" << mgr.to_dot(d);
            }
            if (d_out.empty())
                std::cout << os.str();
            else
                spill(d_out, os.str());
            return 0;
        }
    } catch (const qrot::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
