#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "polylab/cli.hpp"
#include "polylab/constructors.hpp"
#include "polylab/io.hpp"

using namespace polylab;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("polylab_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::vector<std::string>& args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
    std::ostringstream out, err;
    int code = run_command(args, out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return code;
}

void write(const std::string& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary);
    f << bytes;
}

}  // namespace

TEST_CASE("construct and validate round trip") {
    TempDir tmp;
    std::string file = tmp.file("grid.ig");
    CHECK(run({"construct", "grid", "--r", "3", "--c", "4", "-o", file}) == 0);

    std::string out;
    CHECK(run({"validate", file}, &out) == 0);
    CHECK(out.find("weak-generalized-polygon yes") != std::string::npos);
    CHECK(out.find("gonality 4") != std::string::npos);
    CHECK(out.find("order none") != std::string::npos);
}

TEST_CASE("validate flags non-polygons with exit 1") {
    TempDir tmp;
    std::string file = tmp.file("bad.ig");
    write(file, "ig 1\npoints 3\nlines 1\n0 1 2\n");
    std::string out;
    CHECK(run({"validate", file}, &out) == 1);
    CHECK(out.find("weak-generalized-polygon no") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({"frobnicate"}) == 2);
    CHECK(run({"construct", "nosuch", "-o", "/tmp/x"}) == 2);
    CHECK(run({"validate", "/nonexistent/file.ig"}) == 2);
    CHECK(run({}) == 2);
}

TEST_CASE("epi search writes parseable map files") {
    TempDir tmp;
    std::string src = tmp.file("grid33.ig");
    std::string tgt = tmp.file("grid22.ig");
    CHECK(run({"construct", "grid", "--r", "3", "--c", "3", "-o", src}) == 0);
    CHECK(run({"construct", "grid", "--r", "2", "--c", "2", "-o", tgt}) == 0);

    std::string out;
    std::string dir = tmp.file("maps");
    CHECK(run({"epi", "search", src, tgt, "-o", dir}, &out) == 0);
    CHECK(out.find("CHECK epi_search PASS count=72") != std::string::npos);

    // every written map parses back against the geometries
    GeometryPtr gs = grid(3, 3);
    GeometryPtr gt = grid(2, 2);
    int count = 0;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() != ".igmap") continue;
        std::ifstream in(entry.path());
        std::stringstream ss;
        ss << in.rdbuf();
        GeometryMorphism m = parse_morphism(ss.str(), gs, gt);
        CHECK(is_epimorphism(m));
        ++count;
    }
    CHECK(count == 72);
}

TEST_CASE("epi classify on a generated map") {
    TempDir tmp;
    std::string src = tmp.file("w2.ig");
    CHECK(run({"construct", "q4", "--q", "2", "-o", src}) == 0);
    std::string tgt = tmp.file("grid22.ig");
    CHECK(run({"construct", "grid", "--r", "2", "--c", "2", "-o", tgt}) == 0);
    std::string dir = tmp.file("maps");
    CHECK(run({"epi", "search", src, tgt, "-o", dir}) == 0);

    std::string out;
    CHECK(run({"epi", "classify", src, (fs::path(dir) / "epi_0000.igmap").string()}, &out) == 0);
    CHECK(out.find("CLASS family=quadrangle") != std::string::npos);
}

TEST_CASE("theorem commands pass on the smallest instances") {
    TempDir tmp;
    std::string fano = tmp.file("fano.ig");
    CHECK(run({"construct", "plane", "--q", "2", "-o", fano}) == 0);
    std::string out;
    CHECK(run({"theorem", "gt", fano}, &out) == 0);
    CHECK(out.find("CHECK overall PASS") != std::string::npos);

    CHECK(run({"thin-theorem", "--m", "4", "--s", "2", "--sp", "1"}, &out) == 0);
    CHECK(out.find("CHECK overall PASS") != std::string::npos);
}

TEST_CASE("free run emits a journal and snapshot") {
    TempDir tmp;
    std::string target = tmp.file("grid33.ig");
    CHECK(run({"construct", "grid", "--r", "3", "--c", "3", "-o", target}) == 0);
    std::string dir = tmp.file("free");
    std::string out;
    CHECK(run({"free", "run", target, "--stages", "20", "-o", dir}, &out) == 0);
    CHECK(out.find("CHECK overall PASS") != std::string::npos);
    CHECK(fs::exists(fs::path(dir) / "journal.txt"));
    CHECK(fs::exists(fs::path(dir) / "stage_final.ig"));
    CHECK(fs::exists(fs::path(dir) / "stage_final.igmap"));
}

TEST_CASE("hyperplane commands") {
    TempDir tmp;
    std::string w2 = tmp.file("w2.ig");
    CHECK(run({"construct", "q4", "--q", "2", "-o", w2}) == 0);

    std::string out;
    CHECK(run({"hyperplane", "enum", w2}, &out) == 0);
    CHECK(out.find("B=15") != std::string::npos);

    // a perp: point 0 and everything collinear with it
    GeometryPtr g = q4(2).geometry;
    std::string pts = "0";
    std::vector<char> seen(g->point_count(), 0);
    seen[0] = 1;
    for (int l : g->lines_of_point(0))
        for (int p : g->points_of_line(l))
            if (!seen[p]) {
                seen[p] = 1;
                pts += "," + std::to_string(p);
            }
    CHECK(run({"hyperplane", "classify", w2, "--points", pts}, &out) == 0);
    CHECK(out.find("kind=B") != std::string::npos);

    CHECK(run({"hyperplane", "classify", w2, "--points", "0,1"}, &out) == 1);
    CHECK(out.find("kind=NotHyperplane") != std::string::npos);
}
