#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    fs::path out = fs::temp_directory_path() / "polyml_cli_out.txt";
    std::string cmd = std::string(POLYML_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
    int status = std::system(cmd.c_str());
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    fs::remove(out);
    int code = -1;
    if (WIFEXITED(status)) code = WEXITSTATUS(status);
    return {code, ss.str()};
}

fs::path temp_file(const char* name) { return fs::temp_directory_path() / name; }

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("cli: invariants reproduces the reference pentagon rows") {
    fs::path input = temp_file("cli_pentagons.jsonl");
    {
        std::ofstream out(input);
        out << R"({"id": 0, "vertices": [[1,0],[0,-1],[-1,-1],[-1,0],[0,1]]})" << '\n';
        out << R"({"id": 1, "vertices": [[1,0],[1,-1],[0,-1],[-1,0],[-1,2]]})" << '\n';
    }
    RunResult r = run_cli("invariants " + input.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("0,5,7,1,true,5,(1:-1:1:0:-1:1:1:0:-1:1)") != std::string::npos);
    CHECK(r.output.find("1,7,5,1,true,3,(2:-1:1:-1:-1:1:2:0:-1:1)") != std::string::npos);
    fs::remove(input);
}

TEST_CASE("cli: invariants edge cases") {
    SUBCASE("empty file exits cleanly") {
        fs::path input = temp_file("cli_empty.jsonl");
        std::ofstream(input).close();
        RunResult r = run_cli("invariants " + input.string());
        CHECK(r.exit_code == 0);
        fs::remove(input);
    }
    SUBCASE("malformed row gives a data-error exit with the line number") {
        fs::path input = temp_file("cli_bad.jsonl");
        {
            std::ofstream out(input);
            out << R"({"id": 0, "vertices": [[1,0],[0,-1],[-1,-1]]})" << '\n';
            out << "not json" << '\n';
        }
        RunResult r = run_cli("invariants " + input.string());
        CHECK(r.exit_code == 2);
        CHECK(r.output.find(":2") != std::string::npos);
        fs::remove(input);
    }
    SUBCASE("non-Fano rows are reported but the run continues") {
        fs::path input = temp_file("cli_nonfano.jsonl");
        {
            std::ofstream out(input);
            out << R"({"id": 7, "vertices": [[0,0],[2,1],[1,2]]})" << '\n';
            out << R"({"id": 8, "vertices": [[1,0],[0,-1],[-1,-1],[-1,0],[0,1]]})" << '\n';
        }
        RunResult r = run_cli("invariants " + input.string());
        CHECK(r.exit_code == 2);
        CHECK(r.output.find("id 7") != std::string::npos);
        CHECK(r.output.find("8,5,7,1,true,5") != std::string::npos);
        fs::remove(input);
    }
}

TEST_CASE("cli: enumerate-reflexive-2d reports 16 classes") {
    RunResult r = run_cli("enumerate-reflexive-2d");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("16 reflexive polygon classes") != std::string::npos);
}

TEST_CASE("cli: dataset pipeline, training and evaluation round trip") {
    fs::path dir = fs::temp_directory_path() / "polyml_cli_e2e";
    fs::create_directories(dir);
    fs::path raw = dir / "raw.jsonl";
    fs::path labeled = dir / "labeled.jsonl";
    fs::path augmented = dir / "augmented.jsonl";

    RunResult gen = run_cli("dataset gen --dim 2 --count 60 --max-coord 4 --seed 12 -o " +
                            raw.string());
    REQUIRE(gen.exit_code == 0);

    RunResult lab = run_cli("dataset label " + raw.string() + " -o " + labeled.string());
    REQUIRE(lab.exit_code == 0);

    RunResult aug = run_cli("dataset augment " + labeled.string() + " --variants 3 --seed 5 -o " +
                            augmented.string());
    REQUIRE(aug.exit_code == 0);

    SUBCASE("generation is reproducible byte for byte") {
        fs::path raw2 = dir / "raw2.jsonl";
        RunResult gen2 = run_cli("dataset gen --dim 2 --count 60 --max-coord 4 --seed 12 -o " +
                                 raw2.string());
        REQUIRE(gen2.exit_code == 0);
        std::string a = slurp(raw), b = slurp(raw2);
        // the config comment embeds the output path; compare data lines only
        CHECK(a.substr(a.find('\n')) == b.substr(b.find('\n')));
    }

    SUBCASE("train, eval, mds and plot") {
        std::string prefix = (dir / "run").string();
        RunResult tr = run_cli("train --data " + augmented.string() +
                               " --label volume --encoding plucker --arch custom --hidden 16,16"
                               " --loss logcosh --epochs 4 --train-frac 0.8 --seed 3"
                               " --out-prefix " + prefix);
        REQUIRE(tr.exit_code == 0);
        CHECK(fs::exists(prefix + "_fold0.mlp"));
        CHECK(fs::exists(prefix + "_fold0_log.csv"));
        CHECK(fs::exists(prefix + "_metrics.csv"));
        std::string metrics = slurp(prefix + "_metrics.csv");
        CHECK(metrics.find("fold,mae,mape,mse,logcosh,pmcc,pmcc_degenerate,accuracy_bins") !=
              std::string::npos);

        fs::path eval_csv = dir / "eval.csv";
        fs::path preds_csv = dir / "preds.csv";
        RunResult ev = run_cli("eval --model " + prefix + "_fold0.mlp --data " +
                               augmented.string() +
                               " --label volume --encoding plucker --bins 0.5,5% -o " +
                               eval_csv.string() + " --predictions " + preds_csv.string());
        REQUIRE(ev.exit_code == 0);
        CHECK(fs::exists(eval_csv));

        RunResult pl = run_cli("plot --kind truepred --in " + preds_csv.string() + " -o " +
                               (dir / "preds.svg").string());
        REQUIRE(pl.exit_code == 0);
        std::string svg = slurp(dir / "preds.svg");
        CHECK(svg.find("<svg") != std::string::npos);
        CHECK(svg.find("<circle") != std::string::npos);

        fs::path emb_csv = dir / "emb.csv";
        RunResult md = run_cli("mds --data " + augmented.string() +
                               " --components 1 --samples 50 --seed 4 -o " + emb_csv.string() +
                               " --svg " + (dir / "emb.svg").string());
        REQUIRE(md.exit_code == 0);
        std::string emb = slurp(emb_csv);
        CHECK(emb.find("index,x0,label") != std::string::npos);

        SUBCASE("identical config reproduces outputs bit for bit") {
            std::string before = slurp(prefix + "_metrics.csv");
            RunResult tr2 = run_cli("train --data " + augmented.string() +
                                    " --label volume --encoding plucker --arch custom"
                                    " --hidden 16,16 --loss logcosh --epochs 4"
                                    " --train-frac 0.8 --seed 3 --out-prefix " + prefix);
            REQUIRE(tr2.exit_code == 0);
            CHECK(slurp(prefix + "_metrics.csv") == before);
        }
    }

    fs::remove_all(dir);
}

TEST_CASE("cli: usage errors exit with code 1") {
    RunResult r = run_cli("train --data nowhere.jsonl --out-prefix /tmp/x");
    CHECK(r.exit_code == 1);  // neither --folds nor --train-frac
    RunResult r2 = run_cli("definitely-not-a-subcommand");
    CHECK(r2.exit_code != 0);
}

TEST_CASE("cli: missing data file exits with code 2") {
    RunResult r = run_cli("invariants /nonexistent/path.jsonl");
    CHECK(r.exit_code == 2);
}
