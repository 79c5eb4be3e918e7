// One line per acceptance criterion; exit status 1 if any fails.
#include <array>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "checks.hpp"

namespace {

struct Run {
    std::string output;
    int status;
};

Run capture(const std::string& command) {
    Run r{"", -1};
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), n);
    r.status = pclose(pipe);
    return r;
}

// Every verb on the data corpus, each run twice.
std::pair<bool, std::string> determinism() {
    const std::string cli = TPC_CLI;
    const std::string dir = std::string(TPC_DATA_DIR) + "/";
    const std::vector<std::string> invocations{
        "validate e2_3_1.json",
        "validate square.csv",
        "barcode e2_3_1.json",
        "barcode sum.json --csv",
        "normal-form sum.json",
        "bottleneck e2_2_0.json e2_5h_1h.json",
        "bottleneck e1_0.json e1_1.json e2_2_0.json e2_5h_1h.json --jobs 4",
        "interleave e2_2_0.json e2_5h_1h.json --chain-level --shift-invariant",
        "interleave e1_0.json e1_1.json sum.json --jobs 3",
        "hom-barcode e1_0.json e2_2_0.json",
        "min-homotopy map_eta.json",
        "cone map_eta.json",
        "acyclic e2_3_1.json",
        "iso-defect map_eta.json",
        "triangle-verify triangle_eta.json",
        "triangle-verify triangle_rigid.json --stable",
        "triangle-rotate triangle_eta.json",
        "octahedron triangle_eta.json triangle_id.json",
        "frag e2_2_0.json e1_1.json",
        "frag e1_0.json e1_1.json",
        "frag e2_2_0.json e2_5h_1h.json --shift-invariant",
        "prop1-bound e2_2_0.json e2_5h_1h.json",
        "qf e2_2_0.json e2_5h_1h.json",
        "ingest-sublevel circle.json --values circle_values.csv",
        "ingest-metric cone square.csv",
        "ingest-metric suspension square.csv --csv",
        "ingest-metric mapcone square.csv --target pair.csv --map square_to_pair.csv",
        "ingest-metric rips square.csv --floor -1",
        "selftest --quick",
        "manifest",
    };
    std::size_t same = 0;
    std::string first_bad;
    for (const auto& args : invocations) {
        std::string command = "cd '" + dir + "' && '" + cli + "' " + args + " 2>&1";
        auto a = capture(command);
        auto b = capture(command);
        bool ok = a.status == 0 && b.status == 0 && a.output == b.output && !a.output.empty();
        same += ok;
        if (!ok && first_bad.empty()) first_bad = args;
    }
    std::ostringstream detail;
    detail << same << "/" << invocations.size() << " invocations identical";
    if (!first_bad.empty()) detail << ", first difference: " << first_bad;
    return {same == invocations.size(), detail.str()};
}

}  // namespace

int main() {
    bool all = true;
    auto line = [&](int id, bool pass, const std::string& name, const std::string& detail, double seconds) {
        all = all && pass;
        std::ostringstream s;
        s.setf(std::ios::fixed);
        s.precision(2);
        s << (pass ? "PASS" : "FAIL") << " criterion " << id << ": " << name << " (" << detail << ", " << seconds << " s)";
        std::cout << s.str() << std::endl;
    };
    for (const auto& r : tpc::checks::run({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11})) {
        bool pass = r.pass;
        std::string detail = r.detail;
        if (r.id == 1 && r.seconds >= 30.0) pass = false, detail += ", over 30 s";
        if (r.id == 7 && r.seconds >= 60.0) pass = false, detail += ", over 60 s";
        line(r.id, pass, r.name, detail, r.seconds);
    }
    auto [pass, detail] = determinism();
    line(12, pass, "command-line output is reproducible", detail, 0.0);
    return all ? 0 : 1;
}
