#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include "fermat/cli/session.hpp"

namespace {

struct Options {
    std::string mode = "exact";
    std::string strategy = "prefer-in";
    std::string format = "csv";
    std::vector<std::string> batch;
    bool transcript = false;
};

fermat::Session make_session(const Options& o)
{
    return fermat::Session(o.mode == "exact" ? fermat::Mode::exact : fermat::Mode::approx, fermat::parse_strategy(o.strategy),
                           o.format == "csv" ? fermat::PlotFormat::csv : fermat::PlotFormat::svg);
}

struct FileRun {
    std::string out, err;
    int code = 0;
};

FileRun run_file(const Options& o, const std::string& path)
{
    FileRun r;
    std::ifstream in(path);
    if (!in) {
        r.err = "error: cannot open " + path + "\n";
        r.code = 3;
        return r;
    }
    std::ostringstream out, err;
    fermat::Session s = make_session(o);
    r.code = fermat::run_script(s, in, out, err, o.transcript, true);
    r.out = out.str();
    r.err = err.str();
    return r;
}

int interactive(const Options& o)
{
    fermat::Session s = make_session(o);
    bool tty = isatty(STDIN_FILENO) && !o.transcript;
    if (!tty) return fermat::run_script(s, std::cin, std::cout, std::cerr, o.transcript, false);
    int code = 0;
    std::string line;
    while (std::cout << ">> " << std::flush, std::getline(std::cin, line)) {
        std::istringstream one(line);
        int c = fermat::run_script(s, one, std::cout, std::cerr, false, false);
        if (code == 0) code = c;
    }
    std::cout << '\n';
    return code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Calculator for Fermat reals and symbolic ultrapower sequences"};
    Options o;
    app.add_option("--mode", o.mode, "Scalar arithmetic")->check(CLI::IsMember({"exact", "approx"}));
    app.add_option("--strategy", o.strategy, "Filter oracle strategy")
        ->check(CLI::IsMember({"prefer-in", "prefer-out", "evens-first", "odds-first"}));
    app.add_option("--batch", o.batch, "Script files; each runs in its own session")->expected(1, -1);
    app.add_option("--format", o.format, "Plot output format")->check(CLI::IsMember({"csv", "svg"}));
    app.add_flag("--transcript", o.transcript, "Echo each input line after a >> prompt");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }
    if (o.batch.empty()) return interactive(o);

    // sessions are isolated, so files can run side by side
    std::vector<std::future<FileRun>> runs;
    for (const auto& path : o.batch) runs.push_back(std::async(std::launch::async, run_file, std::cref(o), path));
    int code = 0;
    for (auto& f : runs) {
        FileRun r = f.get();
        std::cout << r.out << std::flush;
        std::cerr << r.err << std::flush;
        if (code == 0) code = r.code;
    }
    return code;
}
