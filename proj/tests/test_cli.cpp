#include "app.hpp"

#include <gtest/gtest.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using qes::cli::run;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    int const code = run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

struct Row {
    double rho;
    double value;
};

std::vector<Row> parse_csv(std::string const& text, std::string* header = nullptr)
{
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    if (header) *header = line;
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        auto const comma = line.find(',');
        Row r{};
        std::from_chars(line.data(), line.data() + comma, r.rho);
        std::from_chars(line.data() + comma + 1, line.data() + line.size(), r.value);
        rows.push_back(r);
    }
    return rows;
}

std::filesystem::path scratch_dir(std::string const& name)
{
    auto const dir = std::filesystem::temp_directory_path() / ("qes_cli_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST(Validate, ClassIAdmissible)
{
    auto const r = invoke({"validate", "--class", "I", "--k", "3", "--tau", "4", "--b", "1"});
    EXPECT_EQ(r.code, 0);
    auto const j = json::parse(r.out);
    EXPECT_TRUE(j["paper_regular"].get<bool>());
    EXPECT_TRUE(j["violated"].empty());
}

TEST(Validate, ClassIIIDivergent)
{
    auto const r = invoke({"validate", "--class", "III", "--k", "2", "--tau", "4", "--b", "1"});
    EXPECT_EQ(r.code, 2);
    auto const v = json::parse(r.out)["violated"].get<std::vector<std::string>>();
    EXPECT_NE(std::find(v.begin(), v.end(), "normalization-convergence"), v.end());
}

TEST(Validate, ClassIITauRule)
{
    auto const r = invoke({"validate", "--class", "II", "--k", "3", "--tau", "3", "--b", "1"});
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(json::parse(r.out)["violated"], json::array({"tau>=4"}));
}

TEST(Validate, UsageErrors)
{
    EXPECT_EQ(invoke({"validate", "--class", "I", "--k", "3"}).code, 1);
    EXPECT_EQ(invoke({"validate", "--class", "IV", "--k", "3", "--tau", "4"}).code, 1);
    EXPECT_EQ(invoke({"validate", "--class", "I", "--k", "abc", "--tau", "4"}).code, 1);
    EXPECT_EQ(invoke({"validate", "--class", "I", "--k", "0.5", "--tau", "4"}).code, 1);
    EXPECT_EQ(invoke({}).code, 1);
    EXPECT_EQ(invoke({"frobnicate"}).code, 1);
}

TEST(Table, ClassIIDensity)
{
    auto const r = invoke({"table", "--class", "II", "--k", "3", "--tau", "4", "--b", "1", "--quantity", "density",
                           "--rho-min", "1e-2", "--rho-max", "1e2", "--points", "200", "--spacing", "log"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::string header;
    auto const rows = parse_csv(r.out, &header);
    EXPECT_EQ(header, "rho,density");
    ASSERT_EQ(rows.size(), 200u);
    double peak = 0.0;
    for (auto const& row : rows) {
        EXPECT_GE(row.value, 0.0);
        peak = std::max(peak, row.value);
    }
    EXPECT_LT(rows.front().value, peak);
    EXPECT_LT(rows.back().value, peak);
    EXPECT_DOUBLE_EQ(rows.front().rho, 1e-2);
    EXPECT_DOUBLE_EQ(rows.back().rho, 1e2);
}

TEST(Table, FullPrecisionRoundTrip)
{
    auto const r = invoke({"table", "--class", "I", "--k", "3", "--tau", "4", "--b", "1", "--quantity",
                           "wavefunction", "--rho-min", "1", "--rho-max", "2", "--points", "2", "--spacing", "linear"});
    ASSERT_EQ(r.code, 0);
    auto const rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].value, qes::wavefunction(qes::QesParams{qes::AlgebraClass::I, 3, 1, 4, {}}, 1.0));
}

TEST(Table, PotentialDecaysAtLargeRho)
{
    for (auto const* cls : {"I", "II", "III"}) {
        auto const r = invoke({"table", "--class", cls, "--k", "3", "--tau", "5", "--b", "2", "--quantity",
                               "potential", "--rho-min", "0.1", "--rho-max", "1e4", "--points", "300"});
        ASSERT_EQ(r.code, 0);
        auto const rows = parse_csv(r.out);
        std::size_t last_change = 0;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            if ((rows[i].value > 0) != (rows[i - 1].value > 0)) last_change = i;
        }
        // |V| peaks once after the last zero crossing, then decays monotonically.
        std::size_t peak = last_change;
        for (std::size_t i = last_change; i < rows.size(); ++i) {
            if (std::abs(rows[i].value) > std::abs(rows[peak].value)) peak = i;
        }
        EXPECT_LT(peak + 1, rows.size()) << cls;
        for (std::size_t i = peak + 1; i < rows.size(); ++i) {
            EXPECT_LE(std::abs(rows[i].value), std::abs(rows[i - 1].value)) << cls << " row " << i;
        }
        EXPECT_LT(std::abs(rows.back().value), 1e-6);
    }
}

TEST(Table, WavefunctionNeedsMEqualsK)
{
    auto const r = invoke({"table", "--class", "I", "--k", "3", "--tau", "4", "--b", "1", "--m", "2", "--quantity",
                           "wavefunction"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("m = k"), std::string::npos);
    // Potentials accept general m.
    EXPECT_EQ(invoke({"table", "--class", "I", "--k", "3", "--tau", "4", "--b", "1", "--m", "2", "--quantity",
                      "potential"})
                  .code,
              0);
}

TEST(Table, BadSpecIsUsageError)
{
    std::vector<std::string> const base{"table", "--class", "I", "--k", "3", "--tau", "4"};
    auto with = [&](std::vector<std::string> extra) {
        auto args = base;
        args.insert(args.end(), extra.begin(), extra.end());
        return invoke(args).code;
    };
    EXPECT_EQ(with({"--rho-min", "0"}), 1);
    EXPECT_EQ(with({"--rho-min", "5", "--rho-max", "1"}), 1);
    EXPECT_EQ(with({"--points", "1"}), 1);
    EXPECT_EQ(with({"--quantity", "energy"}), 1);
    EXPECT_EQ(with({"--spacing", "cubic"}), 1);
    EXPECT_EQ(invoke({"table", "--preset", "fig9z"}).code, 1);
}

TEST(Table, JsonFormat)
{
    auto const r = invoke({"table", "--class", "III", "--k", "3", "--tau", "5", "--b", "2", "--points", "5",
                           "--format", "json"});
    ASSERT_EQ(r.code, 0);
    auto const j = json::parse(r.out);
    EXPECT_EQ(j["quantity"], "density");
    EXPECT_EQ(j["rows"].size(), 5u);
    EXPECT_TRUE(j["rows"][0].contains("rho"));
}

TEST(Table, Deterministic)
{
    std::vector<std::string> const args{"table", "--class", "I", "--k", "4", "--tau", "5", "--b", "2"};
    EXPECT_EQ(invoke(args).out, invoke(args).out);
}

TEST(Table, FileOutputAndIoFailure)
{
    auto const dir = scratch_dir("table");
    auto const path = (dir / "t.csv").string();
    auto const r = invoke({"table", "--class", "II", "--k", "3", "--tau", "4", "--b", "1", "-o", path});
    EXPECT_EQ(r.code, 0);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "rho,density");

    auto const bad = invoke({"table", "--class", "II", "--k", "3", "--tau", "4", "--b", "1", "-o",
                             (dir / "missing" / "t.csv").string()});
    EXPECT_EQ(bad.code, 3);
    std::filesystem::remove_all(dir);
}

TEST(Table, PresetMatchesExplicitFlags)
{
    auto const preset = invoke({"table", "--preset", "fig2a"});
    auto const flags = invoke({"table", "--class", "II", "--k", "3", "--tau", "4", "--b", "1", "--rho-min", "1e-3",
                               "--rho-max", "1e3", "--points", "400"});
    ASSERT_EQ(preset.code, 0);
    EXPECT_EQ(preset.out, flags.out);
}

TEST(Normalize, ConvergingValue)
{
    auto const r = invoke({"normalize", "--class", "II", "--k", "3", "--tau", "4", "--b", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto const j = json::parse(r.out);
    EXPECT_EQ(j["verdict"], "converges");
    EXPECT_NEAR(j["value"].get<double>(), 0.080830895954234135, 1e-9);
}

TEST(Normalize, TailDivergence)
{
    auto const r = invoke({"normalize", "--class", "III", "--k", "2", "--tau", "4", "--b", "1"});
    EXPECT_EQ(r.code, 2);
    auto const j = json::parse(r.out);
    EXPECT_EQ(j["message"], "diverges (alpha = 1 <= 1)");
    EXPECT_FALSE(j.contains("value"));
}

TEST(Normalize, OriginDivergenceForTauAboveTwoK)
{
    // k = 2, tau = 5: the tail converges (alpha = 2) but |psi|^2 ~ 1/rho at the origin.
    auto const r = invoke({"normalize", "--class", "III", "--k", "2", "--tau", "5", "--b", "1"});
    EXPECT_EQ(r.code, 2);
    auto const j = json::parse(r.out);
    EXPECT_EQ(j["divergence"], "origin");
    EXPECT_DOUBLE_EQ(j["alpha"].get<double>(), 2.0);
}

TEST(Normalize, WeightedDiagnostic)
{
    auto const r =
        invoke({"normalize", "--class", "I", "--k", "5", "--tau", "8", "--b", "1", "--measure", "weighted"});
    EXPECT_EQ(r.code, 0);
    auto const j = json::parse(r.out);
    EXPECT_EQ(j["measure"], "flat");
    ASSERT_TRUE(j.contains("weighted"));
    EXPECT_EQ(j["weighted"]["verdict"], "diverges");
    EXPECT_EQ(invoke({"normalize", "--class", "I", "--k", "5", "--tau", "8", "--measure", "other"}).code, 1);
}

TEST(Normalize, WavefunctionNeedsMEqualsK)
{
    EXPECT_EQ(invoke({"normalize", "--class", "I", "--k", "5", "--tau", "8", "--m", "4"}).code, 1);
}

TEST(Verify, AllAcceptanceSets)
{
    auto const r = invoke({"verify", "--all"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto const j = json::parse(r.out);
    ASSERT_EQ(j.size(), 9u);
    for (auto const& rep : j) {
        for (auto const* key : {"class", "k", "b", "tau", "convention", "max_residual", "argmax_rho", "passed",
                                "tool_version"}) {
            EXPECT_TRUE(rep.contains(key)) << key;
        }
        EXPECT_TRUE(rep["passed"].get<bool>());
        EXPECT_EQ(rep["convention"], "C_chain");
        EXPECT_LT(rep["max_residual"].get<double>(), 1e-8);
    }
}

TEST(Verify, AdmissibilityReportedSeparately)
{
    // tau = 2.5 passes the printed class I rules but is not square-integrable;
    // tau = 1.5 breaks tau > 2. The residual check runs either way.
    auto const r = invoke({"verify", "--class", "I", "--k", "3", "--tau", "2.5", "--b", "1"});
    EXPECT_EQ(r.code, 0);
    auto const j = json::parse(r.out);
    ASSERT_EQ(j.size(), 1u);
    EXPECT_TRUE(j[0]["passed"].get<bool>());
    EXPECT_TRUE(j[0]["paper_regular"].get<bool>());
    EXPECT_FALSE(j[0]["l2_normalizable"].get<bool>());

    auto const bad = invoke({"verify", "--class", "I", "--k", "3", "--tau", "1.5", "--b", "1"});
    EXPECT_EQ(bad.code, 0);
    auto const jb = json::parse(bad.out);
    EXPECT_TRUE(jb[0]["passed"].get<bool>());
    EXPECT_FALSE(jb[0]["paper_regular"].get<bool>());
    EXPECT_EQ(jb[0]["violated"], json::array({"tau>2"}));
}

TEST(Verify, PerturbationSelfTest)
{
    EXPECT_EQ(invoke({"verify", "--all", "--perturb-potential", "0.01"}).code, 4);
    EXPECT_EQ(invoke({"verify"}).code, 1);
}

TEST(Tcs, Examples)
{
    auto const r = invoke({"tcs", "--N", "3", "--lambda", "1", "--r", "2", "--s", "0", "--k", "5", "--b", "1"});
    ASSERT_EQ(r.code, 0);
    auto const j = json::parse(r.out);
    EXPECT_EQ(j["tau"].get<double>(), 8.0);
    EXPECT_EQ(j["classes"][0]["class"], "I");
    EXPECT_TRUE(j["classes"][0]["paper_regular"].get<bool>());

    auto const small = json::parse(invoke({"tcs", "--N", "2", "--lambda", "1", "--r", "1", "--s", "0", "--k", "2",
                                           "--b", "1"})
                                       .out);
    EXPECT_EQ(small["tau"].get<double>(), 3.0);
    EXPECT_TRUE(small["classes"][0]["paper_regular"].get<bool>());
}

TEST(Tcs, RangeValidation)
{
    EXPECT_EQ(invoke({"tcs", "--N", "3", "--lambda", "1", "--r", "0", "--k", "5"}).code, 1);
    EXPECT_EQ(invoke({"tcs", "--N", "3", "--lambda", "0", "--r", "1", "--k", "5"}).code, 1);
}

TEST(Figures, ListAndWrite)
{
    auto const list = invoke({"figures"});
    EXPECT_EQ(list.code, 0);
    EXPECT_NE(list.out.find("fig1a"), std::string::npos);

    auto const dir = scratch_dir("figures");
    auto const r = invoke({"figures", "--out-dir", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    for (auto const& p : qes::cli::figure_presets()) {
        EXPECT_TRUE(std::filesystem::exists(dir / (std::string(p.name) + ".csv"))) << p.name;
    }
    std::filesystem::remove_all(dir);
}

TEST(Figures, PresetsSatisfyTheirClassConstraints)
{
    for (auto const& p : qes::cli::figure_presets()) {
        EXPECT_TRUE(qes::admissibility(p.params).paper_regular) << p.name;
        EXPECT_TRUE(qes::admissibility(p.params).l2_normalizable) << p.name;
    }
}
