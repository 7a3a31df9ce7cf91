#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "tatebv/harness.hpp"

using namespace tbv;

namespace {

enum Exit { Ok = 0, Failed = 1, BadConfig = 2, TooBig = 3 };

int emit(const Bundle& b, Format f, const std::string& out_dir)
{
    switch (f) {
    case Format::Json: std::cout << to_json(b).dump(2) << '\n'; break;
    case Format::Text: std::cout << render_text(b); break;
    case Format::Csv:
        for (auto& [name, doc] : render_csv(b)) {
            if (out_dir.empty()) {
                std::cout << "# " << name << '\n' << doc;
            } else {
                std::filesystem::create_directories(out_dir);
                std::ofstream(std::filesystem::path(out_dir) / (name + ".csv")) << doc;
            }
        }
        break;
    }
    return b.ok ? Ok : Failed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Tate-Hochschild cohomology of group algebras over F_p"};
    app.require_subcommand(1);

    JobConfig cfg;
    std::string window = "-4..3", format = "json", out_dir;
    bool fault = false;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--group", cfg.group, "preset:NAME:N, S3/D4/C2/V4/Q8, perms:\"(0 1 2),(0 1)\" or file:PATH");
        sub->add_option("--char", cfg.p, "characteristic p");
        sub->add_option("--window", window, "degree window LO..HI");
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_option("--format", format, "json, csv or text");
        sub->add_option("--threads", cfg.threads, "worker threads, 0 for the default");
        sub->add_option("--out", out_dir, "directory for csv files");
        sub->add_option("--direct-cap", cfg.direct_cap, "largest direct-path degree, in basis columns");
        sub->add_option("--decomposition-cap", cfg.decomp_cap, "largest centralizer degree, in basis columns");
    };
    const char* names[] = {"info", "dims", "tables", "verify-s3", "verify-appendix-b", "selftest", "export-diff"};
    const char* help[] = {"group and cost summary",
                          "cohomology dimensions, total and per class",
                          "cup, Delta and bracket structure constants",
                          "check the S3 presentation, Delta values and brackets",
                          "check that B~ kills group homology in low degrees",
                          "randomized identity suites",
                          "sparse dump of the differential"};
    std::vector<CLI::App*> subs;
    for (int i = 0; i < 7; ++i) {
        subs.push_back(app.add_subcommand(names[i], help[i]));
        common(subs.back());
    }
    subs[5]->add_flag("--inject-fault", fault, "corrupt the differential, the d^2 suite must fail");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? Ok : BadConfig;
    }

    try {
        std::tie(cfg.lo, cfg.hi) = parse_window(window);
        cfg.format = parse_format(format);
        Job job(cfg);
        std::string cmd = app.get_subcommands()[0]->get_name();
        Bundle b;
        if (cmd == "info") b = cmd_info(job);
        else if (cmd == "dims") b = cmd_dims(job);
        else if (cmd == "tables") b = cmd_tables(job);
        else if (cmd == "verify-s3") b = cmd_verify_s3(job);
        else if (cmd == "verify-appendix-b") b = cmd_verify_appendix_b(job);
        else if (cmd == "selftest") b = cmd_selftest(job, fault);
        else b = cmd_export_diff(job);
        return emit(b, cfg.format, out_dir);
    } catch (const ConfigError& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return BadConfig;
    } catch (const CostCapError& e) {
        std::cerr << "refused: " << e.what() << " (estimate " << e.estimate << ")\n";
        return TooBig;
    }
}
