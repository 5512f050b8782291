#pragma once

#include "svnfa/automaton.hpp"

// Shared hand-written machines. a1 accepts exactly the words ending in a.
// a2 runs right, turns at the right endmarker and walks back, so it never
// halts in its accepting state while scanning the endmarker: its language
// is empty under the halting convention used here.
inline svnfa::OneWayNfa make_a1() {
  svnfa::OneWayNfa a;
  a.n = 2;
  a.alphabet = {"a", "b"};
  a.init_delta();
  a.start = 0;
  a.accept = 1;
  a.add_transition(0, 0, 0);
  a.add_transition(0, 0, 1);
  a.add_transition(0, 1, 0);
  return a;
}

inline svnfa::TwoWayNfa make_a2() {
  svnfa::TwoWayNfa a;
  a.n = 2;
  a.alphabet = {"a"};
  a.init_delta();
  a.start = 0;
  a.accept = 1;
  auto t = a.tape();
  a.add_transition(0, t.lend(), 0, svnfa::Dir::kRight);
  a.add_transition(0, 0, 0, svnfa::Dir::kRight);
  a.add_transition(0, t.rend(), 1, svnfa::Dir::kLeft);
  a.add_transition(1, 0, 1, svnfa::Dir::kLeft);
  return a;
}

// Small two-way machine with a nonempty language: accepts every word by
// bouncing off the right endmarker once and returning to it in the
// accepting state.
inline svnfa::TwoWayNfa make_all_accepting() {
  svnfa::TwoWayNfa a;
  a.n = 2;
  a.alphabet = {"a"};
  a.init_delta();
  a.start = 0;
  a.accept = 1;
  auto t = a.tape();
  a.add_transition(0, t.lend(), 0, svnfa::Dir::kRight);
  a.add_transition(0, 0, 0, svnfa::Dir::kRight);
  a.add_transition(0, t.rend(), 1, svnfa::Dir::kLeft);
  a.add_transition(1, 0, 1, svnfa::Dir::kRight);
  a.add_transition(1, t.lend(), 1, svnfa::Dir::kRight);
  return a;
}
