#include <catch2/catch_amalgamated.hpp>

#include "abext/workspace.hpp"
#include "abext/ext.hpp"
#include "abext/pull_push.hpp"

#include "corpus.hpp"
#include "gen.hpp"

using namespace abext;
using namespace corpus;
using namespace gen;

TEST_CASE("shorthand grammar covers ranks, torsion, and the zero group") {
  CHECK(group_from_shorthand("Z/4").describe() == "Z/4");
  CHECK(group_from_shorthand("Z").describe() == "Z");
  CHECK(group_from_shorthand("0").describe() == "0");
  CHECK(group_from_shorthand("Z^0").describe() == "0");
  CHECK(group_from_shorthand("Z^3").free_rank() == 3);
  CHECK(group_from_shorthand(" Z^2 + Z/2 + Z/4 ").describe() ==
        "Z^2 + Z/2 + Z/4");
  CHECK(group_from_shorthand("Z + Z").free_rank() == 2);
  CHECK(group_from_shorthand("Z/2+Z/3").order() == 6);

  const AbGroup big = group_from_shorthand("Z/1180591620717411303424");
  CHECK(big.order() == Integer("1180591620717411303424"));

  CHECK_THROWS_AS(group_from_shorthand(""), InputError);
  CHECK_THROWS_AS(group_from_shorthand("Z/0"), InputError);
  CHECK_THROWS_AS(group_from_shorthand("Z/-2"), InputError);
  CHECK_THROWS_AS(group_from_shorthand("Z^"), InputError);
  CHECK_THROWS_AS(group_from_shorthand("Q"), InputError);
  CHECK_THROWS_AS(group_from_shorthand("Z/2 + + Z"), InputError);
  CHECK_THROWS_AS(group_from_shorthand("Z/2 Z/3"), InputError);
}

TEST_CASE("describe output reparses to the same group") {
  Rng rng(2024);
  for (int iter = 0; iter < 30; ++iter) {
    const AbGroup g = rand_group(rng);
    const AbGroup back = group_from_shorthand(g.describe());
    CHECK(back.free_rank() == g.free_rank());
    CHECK(back.invariant_factors() == g.invariant_factors());
  }
}

TEST_CASE("factor declarations parse") {
  const WorkspaceDoc doc = parse_workspace(R"({"groups":{"A":{"factors":[4]}}})");
  CHECK(doc.group("A").describe() == "Z/4");

  const WorkspaceDoc doc2 = parse_workspace(
      R"({"groups":{"G":{"rank":1,"factors":["2","6"]},"H":"Z + Z/2 + Z/6"}})");
  CHECK(doc2.group("G").describe() == "Z + Z/2 + Z/6");
  CHECK(doc2.group("G").same_presentation(doc2.group("H")));
}

TEST_CASE("explicit presentations parse with string entries") {
  const WorkspaceDoc doc = parse_workspace(R"({
    "groups": {
      "skew": {"gens": 2, "rels": [["2", "1"], ["0", "2"]]},
      "free": {"gens": 1, "rels": []},
      "alsofree": {"gens": 1}
    }
  })");
  CHECK(doc.group("skew").order() == 4);
  CHECK(doc.group("skew").invariant_factors() == IntVec{Integer(4)});
  CHECK(doc.group("free").is_free());
  CHECK(doc.group("alsofree").same_presentation(doc.group("free")));
}

TEST_CASE("homs and sess resolve references and validate eagerly") {
  const std::string text = R"({
    "groups": {"A": "Z/2", "B": "Z/4"},
    "homs": {
      "i": {"src": "A", "tgt": "B", "mat": [["2"]]},
      "p": {"src": "B", "tgt": "Z/2", "mat": [[1]]}
    },
    "sess": {"S": {"incl": "i", "proj": "p"}}
  })";
  const WorkspaceDoc doc = parse_workspace(text);
  CHECK(doc.hom("i").mat()(0, 0) == 2);
  CHECK(doc.has_group("Z/2"));
  CHECK(doc.ses("S").middle().describe() == "Z/4");
  CHECK(doc.ses("S").right().same_presentation(doc.group("Z/2")));
}

TEST_CASE("diagnostics name the failing object and invariant") {
  auto message_of = [](const std::string& text) {
    try {
      parse_workspace(text);
    } catch (const Error& e) {
      return std::string(e.what());
    }
    return std::string();
  };

  const std::string undeclared = message_of(
      R"({"homs":{"f":{"src":"A","tgt":"Z/2","mat":[[1]]}}})");
  CHECK(undeclared.find("hom \"f\"") != std::string::npos);
  CHECK(undeclared.find("\"A\"") != std::string::npos);

  const std::string nonhom = message_of(
      R"({"homs":{"f":{"src":"Z/2","tgt":"Z/4","mat":[[1]]}}})");
  CHECK(nonhom.find("hom \"f\"") != std::string::npos);

  const std::string shape = message_of(
      R"({"homs":{"f":{"src":"Z/2","tgt":"Z/4","mat":[[1,0]]}}})");
  CHECK(shape.find("hom \"f\"") != std::string::npos);
  CHECK(shape.find("mat") != std::string::npos);

  const std::string inexact = message_of(R"({
    "groups": {"A": "Z/2", "B": "Z/8"},
    "homs": {
      "i": {"src": "A", "tgt": "B", "mat": [["4"]]},
      "p": {"src": "B", "tgt": "Z/2", "mat": [[1]]}
    },
    "sess": {"S": {"incl": "i", "proj": "p"}}
  })");
  CHECK(inexact.find("ses \"S\"") != std::string::npos);
  CHECK(inexact.find("kernel") != std::string::npos);

  const std::string notproj = message_of(R"({
    "groups": {"B": "Z/4"},
    "homs": {
      "i": {"src": "0", "tgt": "B", "mat": [[]]},
      "p": {"src": "B", "tgt": "Z/2", "mat": [[0]]}
    },
    "sess": {"S": {"incl": "i", "proj": "p"}}
  })");
  CHECK(notproj.find("ses \"S\"") != std::string::npos);
  CHECK(notproj.find("cokernel") != std::string::npos);

  const std::string badchain = message_of(R"({
    "groups": {"A": "Z/2", "B": "Z/4", "C3": "Z/3", "D": "Z/9"},
    "homs": {
      "i": {"src": "A", "tgt": "B", "mat": [["2"]]},
      "p": {"src": "B", "tgt": "Z/2", "mat": [[1]]},
      "i2": {"src": "C3", "tgt": "D", "mat": [["3"]]},
      "p2": {"src": "D", "tgt": "C3", "mat": [[1]]}
    },
    "sess": {"S": {"incl": "i", "proj": "p"},
             "T": {"incl": "i2", "proj": "p2"}},
    "chains": {"C": {"links": ["S", "T"]}}
  })");
  CHECK(badchain.find("chain \"C\"") != std::string::npos);
  CHECK(badchain.find("splice") != std::string::npos);

  const std::string syntax = message_of("{\"groups\": ");
  CHECK(syntax.find("workspace syntax") != std::string::npos);

  CHECK(message_of(R"({"group":{}})").find("unknown key") !=
        std::string::npos);
  CHECK(message_of(R"({"groups":{"A":{"factors":[4],"x":1}}})")
            .find("unknown key") != std::string::npos);
  CHECK(message_of(R"({"groups":{"A":{"factors":[2.5]}}})")
            .find("integer") != std::string::npos);
  CHECK(message_of(R"({"groups":{"A":"Z/4","B":"Z/2"},
                       "homs":{"f":{"src":"A","tgt":"B","mat":[["x"]]}}})")
            .find("decimal") != std::string::npos);
}

TEST_CASE("declared names shadow shorthand spellings") {
  const WorkspaceDoc doc =
      parse_workspace(R"({"groups":{"Z/4":{"factors":[2]}}})");
  CHECK(resolve_group(doc, "Z/4").order() == 2);
  CHECK(resolve_group(doc, "Z/8").order() == 8);
  CHECK_THROWS_AS(resolve_group(doc, "missing"), InputError);
}

TEST_CASE("serialization round trips groups, homs, sess, and chains") {
  Rng rng(77);
  WorkspaceDoc doc;
  doc.add_group("A", AbGroup(2, IntMatrix({{2, 1}, {0, 2}})));
  doc.add_group("coeff", AbGroup::cyclic(2));

  const Ses s = sample_sess()[0];
  doc.add_ses("S", s);

  const ExtGroup xg(s.right(), s.left());
  doc.add_ses("gen",
              xg.extension_from_class(xg.class_from_coords({Integer(1)})));
  doc.add_chain("C", splice(sample_sess()[1], trivial_ses(AbGroup::cyclic(9),
                                                          sample_sess()[1].right())));

  const std::string text = serialize_workspace(doc);
  const WorkspaceDoc back = parse_workspace(text);

  for (const auto& [name, g] : doc.groups())
    CHECK(back.group(name).same_presentation(g));
  for (const auto& [name, e] : doc.homs())
    CHECK(back.hom(name).equal_to(e.hom));
  for (const auto& [name, e] : doc.sess())
    CHECK(ses_same(back.ses(name), e.ses));
  for (const auto& [name, e] : doc.chains())
    CHECK(chain_same(back.chain(name), e.chain));

  CHECK(serialize_workspace(back) == text);
  CHECK(serialize_workspace(doc) == text);
}

TEST_CASE("matrix serialization is presentation-exact") {
  Rng rng(31);
  for (int iter = 0; iter < 20; ++iter) {
    const AbGroup src = rand_group(rng);
    const AbGroup tgt = rand_group(rng);
    const Hom f = rand_hom(rng, src, tgt);
    WorkspaceDoc doc;
    doc.add_group("src", src);
    doc.add_group("tgt", tgt);
    doc.add_hom("f", f, "src", "tgt");
    const WorkspaceDoc back = parse_workspace(serialize_workspace(doc));
    CHECK(back.hom("f").mat() == f.mat());
    CHECK(back.group("src").same_presentation(src));
  }
}

TEST_CASE("huge integers survive the wire") {
  const Integer huge = Integer("123456789012345678901234567890123456789");
  WorkspaceDoc doc;
  doc.add_group("G", AbGroup::cyclic(huge));
  const WorkspaceDoc back = parse_workspace(serialize_workspace(doc));
  CHECK(back.group("G").order() == huge);
}

TEST_CASE("duplicate names are rejected") {
  WorkspaceDoc doc;
  doc.add_group("A", AbGroup::cyclic(2));
  CHECK_THROWS_AS(doc.add_group("A", AbGroup::cyclic(3)), InputError);
  CHECK_THROWS_AS(doc.add_group("", AbGroup::cyclic(3)), InputError);
}
