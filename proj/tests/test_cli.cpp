#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "tgs/canonical.hpp"
#include "tgs/catalog.hpp"
#include "tgs/cli.hpp"
#include "tgs/format.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
  json report() const { return json::parse(out); }
};

std::string data(const std::string& name) { return std::string(TGS_TEST_DATA) + "/" + name; }

Result run_tgs(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = tgs::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("tgs-cli-" + name);
  fs::remove_all(p);
  return p;
}

// Compares against tests/golden/NAME.json; TGS_UPDATE_GOLDEN=1 rewrites it.
void golden(const std::string& name, const std::vector<std::string>& args, int code = 0) {
  Result r = run_tgs(args);
  CAPTURE(name);
  CAPTURE(r.err);
  CHECK(r.code == code);
  std::string path = std::string(TGS_GOLDEN_DIR) + "/" + name + ".json";
  if (std::getenv("TGS_UPDATE_GOLDEN")) {
    tgs::write_file(path, r.out);
    return;
  }
  REQUIRE(fs::exists(path));
  CHECK(r.out == tgs::read_file(path));
}

}  // namespace

TEST_CASE("golden reports") {
  golden("verify-z6-mult", {"verify", data("z6-mult.tgs")});
  golden("verify-z6-sum", {"verify", data("z6-sum.tgs")});
  golden("spec-z6-mult", {"spec", data("z6-mult.tgs")});
  golden("spec-z6-topology", {"spec", data("z6-mult.tgs"), "--topology"});
  golden("ideals-z6-classify", {"ideals", data("z6-mult.tgs"), "--classify"});
  golden("localize-z6-prime", {"localize", data("z6-mult.tgs"), "--prime", "0,3"});
  golden("localize-z6-system", {"localize", data("z6-mult.tgs"), "--system", "1,5"});
  golden("sheaf-z6", {"sheaf", data("z6-mult.tgs")});
  golden("sheaf-z6-open", {"sheaf", data("z6-mult.tgs"), "--open", "2"});
  golden("sheaf-z6-module", {"sheaf", data("z6-mult.tgs"), "--module", data("z6-mod3.tgm")});
  golden("module-verify", {"module", "verify", data("z4-half.tgm")});
  golden("module-homs", {"module", "homs", data("z4-half.tgm"), data("z4-regular.tgm")});
  golden("module-tensor", {"module", "tensor", data("z4-half.tgm"), data("z4-half.tgm")});
  golden("module-hom-module", {"module", "hom-module", data("z6-regular.tgm"), data("z6-mod3.tgm")});
  golden("cech-z6", {"cech", data("z6-mult.tgs"), "--cover", "2,3"});
  golden("euler-z6", {"euler", data("z6-mult.tgs"), "--cover", "2,3", "--mode", "multiplicative"});
  golden("tor-z4", {"tor", data("z4-half.tgm"), data("z4-half.tgm"), "--i", "1"});
  golden("ext-z4", {"ext", data("z4-half.tgm"), data("z4-half.tgm"), "--i", "1"});
  golden("enumerate-o2", {"enumerate", "--order", "2", "--gamma", "1", "--up-to-iso"});
  golden("error-missing-file", {"verify", data("missing.tgs")}, 2);
  golden("error-not-ideal", {"localize", data("z6-mult.tgs"), "--prime", "0,2"}, 1);
}

TEST_CASE("documented examples") {
  json v = run_tgs({"verify", data("z6-mult.tgs")}).report();
  CHECK(v["valid"] == true);
  CHECK(v["check_count"].get<std::size_t>() > 0);

  json s = run_tgs({"spec", data("z6-mult.tgs")}).report();
  CHECK(s["point_count"] == 2);
  CHECK(s["points"] == json::parse("[[0,3],[0,2,4]]"));
  CHECK(s["discrete"] == true);

  fs::path dir = scratch("enum");
  Result e = run_tgs({"enumerate", "--order", "2", "--gamma", "1", "--out", dir.string()});
  REQUIRE(e.code == 0);
  CHECK(e.report()["written"].size() == 4);
  Result q = run_tgs({"catalog", "query", dir.string(), "--order", "2"});
  REQUIRE(q.code == 0);
  CHECK(q.report()["count"] == 4);
}

TEST_CASE("exit codes") {
  CHECK(run_tgs({}).code == 2);
  CHECK(run_tgs({"frobnicate"}).code == 2);
  CHECK(run_tgs({"verify"}).code == 2);
  CHECK(run_tgs({"verify", data("z6-mult.tgs"), "--bogus"}).code == 2);
  CHECK(run_tgs({"verify", data("bad-index.tgs")}).code == 2);
  CHECK(run_tgs({"localize", data("z6-mult.tgs")}).code == 2);
  CHECK(run_tgs({"localize", data("z6-mult.tgs"), "--system", "9"}).code == 2);
  CHECK(run_tgs({"tor", data("z3-regular.tgm"), data("z4-half.tgm")}).code == 2);
  CHECK(run_tgs({"--help"}).code == 0);

  // An invalid structure is a finding, not a failure.
  Result inv = run_tgs({"verify", data("z6-sum.tgs")});
  CHECK(inv.code == 0);
  CHECK(inv.report()["valid"] == false);
  CHECK_FALSE(inv.report()["violations"].empty());

  Result math = run_tgs({"localize", data("z6-mult.tgs"), "--system", "0,1"});
  CHECK(math.code == 1);
  CHECK(math.report()["error"]["kind"] == "InvalidSystem");
  CHECK(math.err.find("InvalidSystem") != std::string::npos);
  CHECK(math.err.find('\n') == math.err.size() - 1);
}

TEST_CASE("quiet prints the primary value") {
  CHECK(run_tgs({"-q", "verify", data("z6-mult.tgs")}).out == "true\n");
  CHECK(run_tgs({"verify", data("z6-sum.tgs"), "--quiet"}).out == "false\n");
  CHECK(run_tgs({"spec", data("z6-mult.tgs"), "-q"}).out == "2\n");
  CHECK(run_tgs({"enumerate", "--order", "2", "--gamma", "1", "-q"}).out == "4\n");
  CHECK(run_tgs({"cech", data("z6-mult.tgs"), "--cover", "2,3", "-q"}).out == "Z6,0\n");
  CHECK(run_tgs({"tor", data("z4-half.tgm"), data("z4-half.tgm"), "-q"}).out == "Z2\n");
}

TEST_CASE("TGS_GUARD scales size guards") {
  std::vector<std::string> args{"enumerate", "--order", "3", "--gamma", "1", "-q"};
  CHECK(run_tgs(args).code == 0);
  setenv("TGS_GUARD", "0.00001", 1);
  Result r = run_tgs(args);
  unsetenv("TGS_GUARD");
  CHECK(r.code == 1);
  CHECK(r.out.find("SizeGuardExceeded") != std::string::npos);
}

TEST_CASE("enumeration output does not depend on the worker count") {
  std::vector<std::string> base{"enumerate", "--order", "3", "--gamma", "1"};
  Result one = run_tgs(base);
  base.insert(base.end(), {"--workers", "4"});
  Result four = run_tgs(base);
  REQUIRE(one.code == 0);
  CHECK(one.out == four.out);
}

TEST_CASE("catalog add, query and rebuild") {
  fs::path dir = scratch("catalog");
  CHECK(run_tgs({"catalog", "query", dir.string()}).report()["count"] == 0);

  Result a1 = run_tgs({"catalog", "add", dir.string(), data("z6-mult.tgs")});
  Result a2 = run_tgs({"catalog", "add", dir.string(), data("z6-mult.tgs"), data("z4-mult.tgs")});
  REQUIRE(a1.code == 0);
  REQUIRE(a2.code == 0);
  CHECK(a1.report()["added"][0]["new"] == true);
  CHECK(a2.report()["added"][0]["new"] == false);
  CHECK(a2.report()["added"][1]["new"] == true);
  CHECK(a2.report()["entries"] == 2);

  SUBCASE("round trip is canonical-form equal") {
    json q = run_tgs({"catalog", "query", dir.string(), "--flag", "identity"}).report();
    REQUIRE(q["count"] == 2);
    for (const char* name : {"z6-mult.tgs", "z4-mult.tgs"}) {
      tgs::GammaSemiring orig = tgs::parse_structure(tgs::read_file(data(name)));
      bool found = false;
      for (const auto& e : q["entries"]) {
        auto back = tgs::parse_structure(tgs::read_file((dir / e["file"].get<std::string>()).string()));
        if (tgs::canonical_form(back).table == tgs::canonical_form(orig).table) found = true;
      }
      CHECK(found);
    }
    CHECK(run_tgs({"catalog", "query", dir.string(), "--order", "4"}).report()["count"] == 1);
    CHECK(run_tgs({"catalog", "query", dir.string(), "--gamma", "2"}).report()["count"] == 0);
  }

  SUBCASE("stale entries are reported and rebuild repairs them") {
    auto entries = tgs::catalog_load(dir.string());
    tgs::write_file((dir / entries[0].file).string(), tgs::read_file(data("z3-mult.tgs")));
    Result q = run_tgs({"catalog", "query", dir.string()});
    CHECK(q.code == 2);
    CHECK(q.report()["error"]["kind"] == "CorruptIndex");
    Result r = run_tgs({"catalog", "rebuild", dir.string()});
    CHECK(r.code == 0);
    CHECK(r.report()["count"] == 2);
    CHECK(run_tgs({"catalog", "query", dir.string()}).report()["count"] == 2);
  }

  SUBCASE("an unparsable index is CorruptIndex") {
    tgs::write_file((dir / tgs::kCatalogIndex).string(), "{ not json");
    CHECK(run_tgs({"catalog", "query", dir.string()}).code == 2);
    tgs::write_file((dir / "junk.tgs").string(), "order 2\n");
    json r = run_tgs({"catalog", "rebuild", dir.string()}).report();
    CHECK(r["count"] == 2);
    CHECK(r["skipped"] == json::parse("[\"junk.tgs\"]"));
    CHECK(run_tgs({"catalog", "query", dir.string()}).report()["count"] == 2);
  }
}
