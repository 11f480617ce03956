#include <groupeq/cli.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

using namespace groupeq;
using Catch::Matchers::ContainsSubstring;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "groupeq_cli_tests";
    fs::create_directories(dir);
    fs::path p = dir / name;
    std::ofstream out(p);
    out << text;
    out.close();
    return p.string();
}

// Matches a complete key=value output line.
bool has_kv(const std::string& out, const std::string& key, const std::string& value) {
    std::string needle = key + "=" + value + "\n";
    return out.rfind(needle, 0) == 0 || out.find("\n" + needle) != std::string::npos;
}

const std::string kCube = "coefficients:\n  a = (1 2 3)\nequations:\n  x^3 y^3 = @a\n";

}  // namespace

TEST_CASE("cli analyze", "[cli]") {
    std::string path = write_temp("cube.geq", kCube);

    SECTION("machine keys") {
        CliResult r = run_cli({"analyze", path, "--machine"});
        REQUIRE(r.exit_code == 0);
        REQUIRE(r.err.empty());
        REQUIRE(has_kv(r.out, "unknowns", "x,y"));
        REQUIRE(has_kv(r.out, "atoms", "a"));
        REQUIRE(has_kv(r.out, "equations", "1"));
        REQUIRE(has_kv(r.out, "coefficient_free", "false"));
        REQUIRE(has_kv(r.out, "rank", "1"));
        REQUIRE(has_kv(r.out, "snf_diagonal", "3"));
        REQUIRE(has_kv(r.out, "kernel_rank", "1"));
        REQUIRE(has_kv(r.out, "indexing", "1,-1"));
        REQUIRE(has_kv(r.out, "degree_one_word", "y^-1"));
    }

    SECTION("human mode adds prose before the keys") {
        CliResult r = run_cli({"analyze", path});
        REQUIRE(r.exit_code == 0);
        REQUIRE_THAT(r.out, ContainsSubstring("canonical form:"));
        REQUIRE_THAT(r.out, ContainsSubstring("exponent matrix:"));
        REQUIRE(has_kv(r.out, "rank", "1"));
    }

    SECTION("missing file") {
        CliResult r = run_cli({"analyze", "/nonexistent/x.geq", "--machine"});
        REQUIRE(r.exit_code == 2);
        REQUIRE_THAT(r.err, ContainsSubstring("cannot open"));
    }

    SECTION("syntax errors carry positions") {
        std::string bad = write_temp("bad.geq", "x &\n");
        CliResult r = run_cli({"analyze", bad, "--machine"});
        REQUIRE(r.exit_code == 2);
        REQUIRE_THAT(r.err, ContainsSubstring("parse error:"));
    }
}

TEST_CASE("cli count", "[cli]") {
    std::string path = write_temp("cube.geq", kCube);

    SECTION("counts and verdicts") {
        CliResult r = run_cli({"count", path, "--group", "S3", "--machine"});
        REQUIRE(r.exit_code == 0);
        REQUIRE(has_kv(r.out, "group", "S3"));
        REQUIRE(has_kv(r.out, "group_order", "6"));
        REQUIRE(has_kv(r.out, "count", "3"));
        REQUIRE(has_kv(r.out, "assignments", "36"));
        REQUIRE(has_kv(r.out, "solomon_applicable", "false"));
        REQUIRE(has_kv(r.out, "grv_applicable", "false"));
        REQUIRE(has_kv(r.out, "km_applicable", "true"));
        REQUIRE(has_kv(r.out, "km_divisor", "3"));
        REQUIRE(has_kv(r.out, "km_divides", "true"));
    }

    SECTION("solution listing") {
        CliResult r = run_cli({"count", path, "--group", "S3", "--machine", "--list"});
        REQUIRE(r.exit_code == 0);
        REQUIRE_THAT(r.out, ContainsSubstring("solution_1=x="));
        REQUIRE_THAT(r.out, ContainsSubstring("solution_3=x="));
        REQUIRE_THAT(r.out, ContainsSubstring("|y="));
    }

    SECTION("budget exhaustion") {
        CliResult r = run_cli({"count", path, "--group", "S3", "--budget", "1", "--machine"});
        REQUIRE(r.exit_code == 2);
        REQUIRE_THAT(r.err, ContainsSubstring("budget error:"));
        REQUIRE_THAT(r.err, ContainsSubstring("raise --budget"));
    }

    SECTION("group option is required") {
        CliResult r = run_cli({"count", path});
        REQUIRE(r.exit_code == 2);
        REQUIRE_FALSE(r.err.empty());
    }
}

TEST_CASE("cli partition", "[cli]") {
    std::string path = write_temp("cube.geq", kCube);

    SECTION("centralizer partition of the cube system") {
        CliResult r = run_cli({"partition", path, "--group", "S3", "--machine"});
        REQUIRE(r.exit_code == 0);
        REQUIRE(has_kv(r.out, "subgroup", "centralizer"));
        REQUIRE(has_kv(r.out, "subgroup_order", "3"));
        REQUIRE(has_kv(r.out, "solutions", "3"));
        REQUIRE(has_kv(r.out, "condition_conjugation", "true"));
        REQUIRE(has_kv(r.out, "condition_twists", "true"));
        REQUIRE(has_kv(r.out, "classes", "1"));
        REQUIRE(has_kv(r.out, "class_sizes", "3"));
        REQUIRE(has_kv(r.out, "tail_counts", "1"));
        REQUIRE(has_kv(r.out, "core_orders", "3"));
        REQUIRE(has_kv(r.out, "tails_consistent", "true"));
    }

    SECTION("human mode names a representative") {
        CliResult r = run_cli({"partition", path, "--group", "S3"});
        REQUIRE(r.exit_code == 0);
        REQUIRE_THAT(r.out, ContainsSubstring("class 1: size 3"));
        REQUIRE_THAT(r.out, ContainsSubstring("representative x = "));
    }

    SECTION("subgroup must centralize the coefficients") {
        CliResult r = run_cli({"partition", path, "--group", "S3", "--subgroup", "full"});
        REQUIRE(r.exit_code == 2);
        REQUIRE_THAT(r.err, ContainsSubstring("centralizer of coefficient"));
    }

    SECTION("unknown subgroup choice is a usage error") {
        CliResult r = run_cli({"partition", path, "--group", "S3", "--subgroup", "nope"});
        REQUIRE(r.exit_code == 2);
    }
}

TEST_CASE("cli epi", "[cli]") {
    SECTION("free group of rank 2 onto S3") {
        CliResult r = run_cli({"epi", "--group", "S3", "--rank", "2", "--machine"});
        REQUIRE(r.exit_code == 0);
        REQUIRE(has_kv(r.out, "count", "18"));
        REQUIRE(has_kv(r.out, "tuples", "36"));
        REQUIRE(has_kv(r.out, "km17_epi_applicable", "true"));
        REQUIRE(has_kv(r.out, "km17_epi_divisor", "3"));
        REQUIRE(has_kv(r.out, "km17_epi_divides", "true"));
    }

    SECTION("cyclic target") {
        CliResult r = run_cli({"epi", "--group", "C6", "--rank", "1", "--machine"});
        REQUIRE(r.exit_code == 0);
        REQUIRE(has_kv(r.out, "count", "2"));
        REQUIRE(has_kv(r.out, "km17_epi_divisor", "1"));
    }
}

TEST_CASE("cli dim", "[cli]") {
    std::string path = write_temp("involution.geq", "x^2 = 1\n");

    SECTION("involution variety over SL2") {
        CliResult r = run_cli({"dim", path, "--model", "SL2", "--machine"});
        REQUIRE(r.exit_code == 0);
        REQUIRE(has_kv(r.out, "model", "SL2"));
        REQUIRE(has_kv(r.out, "group_dim", "3"));
        REQUIRE(has_kv(r.out, "encoding", "direct"));
        REQUIRE(has_kv(r.out, "nvars", "4"));
        REQUIRE(has_kv(r.out, "dimension", "0"));
        REQUIRE(has_kv(r.out, "crosscheck", "agree"));
        REQUIRE(has_kv(r.out, "dimension_modp", "0"));
        REQUIRE(has_kv(r.out, "rank", "1"));
        REQUIRE(has_kv(r.out, "thm0_bound", "0"));
        REQUIRE(has_kv(r.out, "thm0_passed", "true"));
        REQUIRE(has_kv(r.out, "thm1_applicable", "false"));
        REQUIRE(has_kv(r.out, "corollary_applicable", "false"));
        REQUIRE(has_kv(r.out, "all_passed", "true"));
    }

    SECTION("crosscheck can be skipped") {
        CliResult r = run_cli({"dim", path, "--model", "SL2", "--machine", "--no-crosscheck"});
        REQUIRE(r.exit_code == 0);
        REQUIRE(has_kv(r.out, "crosscheck", "skipped"));
        REQUIRE(r.out.find("dimension_modp=") == std::string::npos);
    }

    SECTION("reduction budget") {
        CliResult r = run_cli({"dim", path, "--model", "SL2", "--budget", "0", "--machine"});
        REQUIRE(r.exit_code == 2);
        REQUIRE_THAT(r.err, ContainsSubstring("budget error:"));
    }

    SECTION("bad model") {
        CliResult r = run_cli({"dim", path, "--model", "S5", "--machine"});
        REQUIRE(r.exit_code == 2);
        REQUIRE_THAT(r.err, ContainsSubstring("unrecognized model"));
    }

    SECTION("bad encoding choice") {
        CliResult r = run_cli({"dim", path, "--model", "SL2", "--encoding", "fast"});
        REQUIRE(r.exit_code == 2);
    }
}

TEST_CASE("cli usage", "[cli]") {
    SECTION("help exits cleanly") {
        CliResult r = run_cli({"--help"});
        REQUIRE(r.exit_code == 0);
        REQUIRE_THAT(r.out, ContainsSubstring("groupeq"));
        REQUIRE_THAT(r.out, ContainsSubstring("analyze"));
        REQUIRE_THAT(r.out, ContainsSubstring("dim"));
    }

    SECTION("a subcommand is required") {
        REQUIRE(run_cli({}).exit_code == 2);
    }

    SECTION("unknown flags are rejected") {
        REQUIRE(run_cli({"epi", "--group", "S3", "--rank", "1", "--frobnicate"}).exit_code == 2);
    }
}
