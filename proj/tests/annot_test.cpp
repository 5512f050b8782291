#include "doctest.h"
#include "fixtures.hpp"
#include "svnfa/annot.hpp"
#include "svnfa/verify.hpp"

using namespace svnfa;

namespace {
std::string bits(const AnnotatedWord& x) {
  std::string s;
  for (auto& c : x) s += char('0' + c.bit);
  return s;
}
}  // namespace

TEST_CASE("annotation of a1 prefixes") {
  AnnotationSpec spec = AnnotationSpec::cg1(make_a1());
  CHECK(annotate(spec, {}).empty());
  CHECK(bits(annotate(spec, {0, 1})) == "10");        // ab
  CHECK(bits(annotate(spec, {0, 1, 0})) == "100");    // aba
  CHECK(bits(annotate(spec, {0})) == "0");            // a: partial block
  CHECK(bits(annotate(spec, {0, 0})) == "11");        // aa
  CHECK(bits(annotate(spec, {0, 0, 1, 1})) == "1110");  // aabb
}

TEST_CASE("two-way annotation uses the normalized block size") {
  Cg2Machine machine = build_cg2(make_a2());
  AnnotationSpec spec = AnnotationSpec::cg2(machine.normalized());
  CHECK(spec.block_size == 9);
  Word w(9, 0);
  AnnotatedWord x = annotate(spec, w);
  CHECK(bits(x) == encode_rel(ltable(machine.normalized().inner, w)));
}

TEST_CASE("well-annotated accepts exactly the produced annotation") {
  AnnotationSpec spec = AnnotationSpec::cg1(make_a1());
  for (uint32_t len = 0; len <= 8; ++len)
    for (auto& w : all_words(2, len)) {
      AnnotatedWord good = annotate(spec, w);
      CHECK(is_well_annotated(spec, good));
      for (size_t i = 0; i < good.size(); ++i) {
        AnnotatedWord bad = good;
        bad[i].bit ^= 1;
        CHECK(!is_well_annotated(spec, bad));
      }
    }
}

TEST_CASE("short words annotate to all zeros") {
  AnnotationSpec spec = AnnotationSpec::cg1(make_a1());
  for (auto& w : all_words(2, 1)) {
    AnnotatedWord x = annotate(spec, w);
    CHECK(x[0].bit == 0);
    AnnotatedWord bad = x;
    bad[0].bit = 1;
    CHECK(!is_well_annotated(spec, bad));
  }
}

TEST_CASE("complete blocks are prefix coherent") {
  AnnotationSpec spec = AnnotationSpec::cg1(make_a1());
  for (auto& w : all_words(2, 7)) {
    AnnotatedWord full = annotate(spec, w);
    for (uint32_t kb = 1; kb * spec.block_size <= w.size(); ++kb) {
      Word prefix(w.begin(), w.begin() + kb * spec.block_size);
      AnnotatedWord part = annotate(spec, prefix);
      for (size_t i = 0; i < part.size(); ++i) CHECK(part[i] == full[i]);
    }
  }
}
