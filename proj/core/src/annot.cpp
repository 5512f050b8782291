#include "svnfa/annot.hpp"

namespace svnfa {

AnnotationSpec AnnotationSpec::cg1(const OneWayNfa& a) {
  AnnotationSpec s;
  s.mode = Mode::kCg1;
  s.one_way = a;
  s.block_size = a.n;
  return s;
}

AnnotationSpec AnnotationSpec::cg2(const NormalizedTwoWayNfa& a) {
  AnnotationSpec s;
  s.mode = Mode::kCg2;
  s.two_way = a;
  s.block_size = a.inner.n * a.inner.n;
  return s;
}

AnnotatedWord annotate(const AnnotationSpec& spec, const Word& w) {
  const uint32_t b = spec.block_size;
  std::vector<uint8_t> bits(w.size(), 0);
  for (size_t end = b; end <= w.size(); end += b) {
    Word prefix(w.begin(), w.begin() + end);
    std::string enc = spec.mode == Mode::kCg1
                          ? encode_set(qx_one_way(spec.one_way, prefix))
                          : encode_rel(ltable(spec.two_way.inner, prefix));
    for (uint32_t i = 0; i < b; ++i) bits[end - b + i] = enc[i] == '1';
  }
  return zip_annotation(w, bits);
}

bool is_well_annotated(const AnnotationSpec& spec, const AnnotatedWord& x) {
  return annotate(spec, project_input(x)) == x;
}

}  // namespace svnfa
