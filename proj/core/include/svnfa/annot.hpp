#pragma once

#include <cstdint>

#include "svnfa/annotated.hpp"
#include "svnfa/automaton.hpp"
#include "svnfa/tables.hpp"

namespace svnfa {

enum class Mode : uint8_t { kCg1, kCg2 };

// Which annotation a word must carry: blocks of size n carry qx-set
// encodings (one-way source), blocks of size (n+1)^2 carry ltable encodings
// of the restart-normalized machine (two-way source). The incomplete tail
// is all zeros.
struct AnnotationSpec {
  Mode mode;
  OneWayNfa one_way;             // kCg1
  NormalizedTwoWayNfa two_way;   // kCg2
  uint32_t block_size = 0;

  static AnnotationSpec cg1(const OneWayNfa& a);
  static AnnotationSpec cg2(const NormalizedTwoWayNfa& a);
};

AnnotatedWord annotate(const AnnotationSpec& spec, const Word& w);
bool is_well_annotated(const AnnotationSpec& spec, const AnnotatedWord& x);

}  // namespace svnfa
