#include "doctest.h"
#include "pcfp/errors.hpp"
#include "pcfp/expr.hpp"
#include "pcfp/program.hpp"
#include "pcfp/rational.hpp"

using namespace pcfp;

TEST_CASE("rational rendering") {
  CHECK(rational_to_string(make_rational(1, 2)) == "0.5");
  CHECK(rational_to_string(make_rational(3, 10)) == "0.3");
  CHECK(rational_to_string(make_rational(1, 4)) == "0.25");
  CHECK(rational_to_string(make_rational(1)) == "1");
  CHECK(rational_to_string(make_rational(3, 13)) == "3/13");
  CHECK(rational_to_string(make_rational(6, 4)) == "1.5");
  CHECK(rational_to_string(make_rational(-1, 2)) == "-0.5");
  CHECK(rational_to_string(make_rational(1, 20)) == "0.05");
  CHECK(rational_to_string(Rational(0)) == "0");
  CHECK_THROWS_AS(make_rational(1, 0), EvalError);
}

TEST_CASE("decimal literals are exact") {
  CHECK(rational_from_decimal("0", "5") == make_rational(1, 2));
  CHECK(rational_from_decimal("0", "1") * 10 == 1);
  CHECK(rational_from_decimal("1", "25") == make_rational(5, 4));
  CHECK(rational_from_decimal("0", "0000001") == make_rational(1, 10000000));
}

TEST_CASE("eval_int") {
  VarEval ev = VarEval::from_pairs({{"x", 2}, {"y", 3}});
  CHECK(eval_int(*Expr::add(Expr::var_ref("x"), Expr::int_lit(5)), ev, 0) ==
        7);
  CHECK(eval_int(*Expr::add(Expr::int_lit(1), Expr::var_ref("y")), ev, 0) ==
        4);
  CHECK(eval_int(*Expr::int_lit(0), VarEval{}, 0) == 0);
  CHECK(eval_int(*Expr::var_ref("cf"), ev, 7) == 7);
  CHECK(eval_int(*Expr::mul(Expr::var_ref("x"),
                            Expr::sub(Expr::var_ref("y"), Expr::int_lit(1))),
                 ev, 0) == 4);
  CHECK_THROWS_AS(eval_int(*Expr::var_ref("z"), ev, 0), EvalError);
}

TEST_CASE("eval_bool") {
  // (x>1) & (y<=x+5)
  ExprPtr guard = Expr::land(
      Expr::gt(Expr::var_ref("x"), Expr::int_lit(1)),
      Expr::le(Expr::var_ref("y"),
               Expr::add(Expr::var_ref("x"), Expr::int_lit(5))));
  CHECK(eval_bool(*guard, VarEval::from_pairs({{"x", 2}, {"y", 7}}), 0));
  CHECK_FALSE(eval_bool(*guard, VarEval::from_pairs({{"x", 1}, {"y", 0}}), 0));
  CHECK(eval_bool(*Expr::bool_lit(true), VarEval{}, 0));
  CHECK(eval_bool(*Expr::lnot(Expr::bool_lit(false)), VarEval{}, 0));
  CHECK_THROWS_AS(eval_bool(*Expr::int_lit(1), VarEval{}, 0), EvalError);
}

TEST_CASE("eval_prob") {
  CHECK(eval_prob(*Expr::prob_lit(rational_from_decimal("0", "3")),
                  VarEval{}) == make_rational(3, 10));
  // x/(1+x) at x=1 and x=3
  ExprPtr ratio = Expr::ratio(
      Expr::var_ref("x"), Expr::add(Expr::int_lit(1), Expr::var_ref("x")));
  CHECK(eval_prob(*ratio, VarEval::from_pairs({{"x", 1}})) ==
        make_rational(1, 2));
  CHECK(eval_prob(*ratio, VarEval::from_pairs({{"x", 3}})) ==
        make_rational(3, 4));
  CHECK(eval_prob(*Expr::prob_lit(make_rational(1)), VarEval{}) == 1);

  CHECK_THROWS_AS(
      eval_prob(*Expr::ratio(Expr::int_lit(1), Expr::var_ref("x")),
                VarEval::from_pairs({{"x", 0}})),
      EvalError);
  CHECK_THROWS_AS(
      eval_prob(*Expr::ratio(Expr::int_lit(3), Expr::int_lit(2)), VarEval{}),
      EvalError);
  // the control-flow variable is not allowed in probabilities
  CHECK_THROWS_AS(
      eval_prob(*Expr::ratio(Expr::var_ref("cf"), Expr::int_lit(2)),
                VarEval{}),
      EvalError);
}

TEST_CASE("evaluation is pure") {
  VarEval ev = VarEval::from_pairs({{"x", 2}});
  ExprPtr e = Expr::mul(Expr::var_ref("x"), Expr::var_ref("x"));
  for (int i = 0; i < 3; ++i) CHECK(eval_int(*e, ev, 0) == 4);
  CHECK(ev.get("x") == 2);
}

TEST_CASE("structural equality and typing") {
  ExprPtr a = Expr::eq(Expr::var_ref("x"), Expr::int_lit(1));
  ExprPtr b = Expr::eq(Expr::var_ref("x"), Expr::int_lit(1));
  ExprPtr c = Expr::eq(Expr::var_ref("x"), Expr::int_lit(2));
  CHECK(structurally_equal(a, b));
  CHECK_FALSE(structurally_equal(a, c));

  CHECK(type_of(*a) == ExprType::Bool);
  CHECK(type_of(*Expr::int_lit(3)) == ExprType::Int);
  CHECK(type_of(*Expr::ratio(Expr::int_lit(1), Expr::int_lit(2))) ==
        ExprType::Prob);
  CHECK_THROWS_AS(type_of(*Expr::add(Expr::bool_lit(true), Expr::int_lit(1))),
                  EvalError);
  CHECK_THROWS_AS(type_of(*Expr::land(Expr::int_lit(1), Expr::bool_lit(true))),
                  EvalError);
}

TEST_CASE("expression rendering round-trips nesting") {
  ExprPtr right_nested =
      Expr::add(Expr::var_ref("x"),
                Expr::add(Expr::var_ref("y"), Expr::int_lit(1)));
  CHECK(to_string(*right_nested) == "x+(y+1)");
  ExprPtr left_nested = Expr::add(
      Expr::add(Expr::var_ref("x"), Expr::var_ref("y")), Expr::int_lit(1));
  CHECK(to_string(*left_nested) == "x+y+1");
  ExprPtr mixed = Expr::lor(
      Expr::land(Expr::eq(Expr::var_ref("x"), Expr::int_lit(0)),
                 Expr::bool_lit(true)),
      Expr::lnot(Expr::eq(Expr::var_ref("y"), Expr::int_lit(1))));
  CHECK(to_string(*mixed) == "x=0 & true | !(y=1)");
  CHECK(to_string(*Expr::mul(Expr::add(Expr::var_ref("x"), Expr::int_lit(1)),
                             Expr::int_lit(3))) == "(x+1)*3");
  CHECK(to_string(*Expr::int_lit(-2)) == "(-2)");
}
