#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// End-to-end checks of the installed command-line surface.

namespace {

const std::string cli = TOOLFIT_CLI_PATH;

std::string tmp_dir() {
    static int counter = 0;
    std::string dir = "/tmp/toolfit_cli_test_" + std::to_string(counter++);
    if (std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str()) != 0)
        throw std::runtime_error("cannot prepare " + dir);
    return dir;
}

int run(const std::string& args) {
    int status = std::system((cli + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const char* kLShape = R"({
  "version": "toolfit-path/1",
  "pieces": [
    {"type": "line", "from": [0, 0], "to": [4, 0]},
    {"type": "line", "from": [4, 0], "to": [4, 4]}
  ]
})";

const char* kBezierPath = R"({
  "version": "toolfit-path/1",
  "pieces": [
    {"type": "bezier", "points": [[0, 0], [1, 3], [2, -3], [3, 0]]}
  ]
})";

} // namespace

TEST_CASE("cli: interp builtin cubic is exact in one segment") {
    std::string dir = tmp_dir();
    int code = run("interp --function poly:119,-6,31,1 --interval 0:1 --tolerance 1e-6 --out " +
                   dir + "/spline.json --report " + dir + "/report.tsv");
    CHECK(code == 0);
    std::string report = read_file(dir + "/report.tsv");
    CHECK(report.find("curve\tsegment") == 0);
    // exactly one data row: header + row + trailing newline
    CHECK(std::count(report.begin(), report.end(), '\n') == 2);
    CHECK(report.find("yes") != std::string::npos);
}

TEST_CASE("cli: polyline document gets one segment per piece") {
    std::string dir = tmp_dir();
    write_file(dir + "/path.json", kLShape);
    int code = run("interp " + dir + "/path.json --tolerance 1e-3 --out " + dir +
                   "/spline.json --report " + dir + "/report.tsv --svg " + dir + "/out.svg");
    CHECK(code == 0);
    std::string report = read_file(dir + "/report.tsv");
    CHECK(std::count(report.begin(), report.end(), '\n') == 3); // header + 2 rows
    std::string svg = read_file(dir + "/out.svg");
    CHECK(svg.find("class=\"source\"") != std::string::npos);
    CHECK(svg.find("class=\"fitted\"") != std::string::npos);
}

TEST_CASE("cli: emitted documents re-verify and are deterministic") {
    std::string dir = tmp_dir();
    write_file(dir + "/path.json", kBezierPath);
    std::string fit_cmd = "interp " + dir + "/path.json --tolerance 1e-3 --out ";
    CHECK(run(fit_cmd + dir + "/a.json") == 0);
    CHECK(run(fit_cmd + dir + "/b.json") == 0);
    CHECK(run(fit_cmd + dir + "/u.json --strategy uniform") == 0);
    CHECK(run("report " + dir + "/u.json " + dir + "/path.json") == 0);
    CHECK(read_file(dir + "/a.json") == read_file(dir + "/b.json"));
    CHECK(read_file(dir + "/a.json").find("toolfit-spline/1") != std::string::npos);

    CHECK(run("report " + dir + "/a.json " + dir + "/path.json") == 0);
    CHECK(run("render --path " + dir + "/path.json --spline " + dir + "/a.json --svg " + dir +
              "/r.svg") == 0);
    CHECK(read_file(dir + "/r.svg").find("<svg") != std::string::npos);
}

TEST_CASE("cli: report catches corruption with exit code 5") {
    std::string dir = tmp_dir();
    write_file(dir + "/path.json", kBezierPath);
    CHECK(run("interp " + dir + "/path.json --tolerance 1e-3 --out " + dir + "/s.json") == 0);
    std::string doc = read_file(dir + "/s.json");
    // nudge one coefficient enough to break verification
    auto pos = doc.rfind("\"coeffs\"");
    pos = doc.find('.', pos);
    doc[pos + 1] = doc[pos + 1] == '9' ? '1' : '9';
    write_file(dir + "/bad.json", doc);
    CHECK(run("report " + dir + "/bad.json " + dir + "/path.json") == 5);
}

TEST_CASE("cli: offset-fit of the L-shape") {
    std::string dir = tmp_dir();
    write_file(dir + "/path.json", kLShape);
    int code = run("offset-fit " + dir + "/path.json --radius -1 --tolerance 1e-4 --out " + dir +
                   "/s.json --svg " + dir + "/o.svg");
    CHECK(code == 0);
    CHECK(read_file(dir + "/s.json").find("\"radius\": -1.0") != std::string::npos);
    CHECK(run("report " + dir + "/s.json " + dir + "/path.json") == 0);
}

TEST_CASE("cli: exit codes") {
    std::string dir = tmp_dir();
    write_file(dir + "/garbage.json", "{ not json");
    CHECK(run("interp " + dir + "/garbage.json --tolerance 1e-3") == 2);
    CHECK(run("interp --tolerance 1e-3") == 2); // neither input nor --function
    CHECK(run("interp --function poly:1 --tolerance 1e-3") == 2); // missing interval
    CHECK(run("nonsense") == 2);

    // reversal: no valid square corner
    write_file(dir + "/reversal.json", R"({
      "version": "toolfit-path/1",
      "pieces": [
        {"type": "line", "from": [0, 0], "to": [2, 0]},
        {"type": "line", "from": [2, 0], "to": [0, 0]}
      ]})");
    CHECK(run("offset-fit " + dir + "/reversal.json --radius 1 --tolerance 1e-3") == 4);

    // unreachable tolerance underflows the adaptive step
    write_file(dir + "/bez.json", kBezierPath);
    CHECK(run("interp " + dir + "/bez.json --tolerance 1e-30") == 3);
}
