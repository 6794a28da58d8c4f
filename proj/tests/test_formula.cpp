#include <gtest/gtest.h>

#include "stewart/errors.hpp"
#include "stewart/formula.hpp"

using namespace stewart;

namespace {

std::string shape(std::string_view text) { return to_string(*parse_formula(text).root); }

std::size_t error_column(std::string_view text) {
  try {
    parse_formula(text);
  } catch (const ParseError& e) {
    return e.column();
  }
  return 0;
}

}  // namespace

TEST(Parse, HascubeQuantifierPrefix) {
  const ParsedFormula f =
      parse_formula("?lsd_3 Ei,p,t p>=1 & Aj (j<2*p) => TP[t][i+j]=TP[t][i+j+p]");
  EXPECT_EQ(f.base, 3);
  ASSERT_EQ(f.root->kind, Formula::Kind::Exists);
  EXPECT_EQ(f.root->vars, (std::vector<std::string>{"i", "p", "t"}));
  EXPECT_EQ(to_string(*f.root),
            "(Ei,p,t (p>=1 & (Aj (j<2*p => TP[t][(i+j)]=TP[t][((i+j)+p)]))))");
}

TEST(Parse, ClosedUniversal) {
  const ParsedFormula f = parse_formula("Ax x=x");
  EXPECT_EQ(f.base, 0);
  EXPECT_EQ(f.root->kind, Formula::Kind::Forall);
  EXPECT_EQ(f.root->lhs->kind, Formula::Kind::Compare);
}

TEST(Parse, UnbalancedParenthesis) {
  EXPECT_THROW(parse_formula("(x=y"), ParseError);
  EXPECT_EQ(error_column("(x=y"), 5u);
  EXPECT_EQ(error_column("x=y)"), 4u);
  EXPECT_EQ(error_column("Ax (x=x & "), 11u);
}

TEST(Parse, Precedence) {
  EXPECT_EQ(shape("a=b | c=d & e=f"), "(a=b | (c=d & e=f))");
  EXPECT_EQ(shape("~a=b & c=d"), "(~a=b & c=d)");
  EXPECT_EQ(shape("a=b | c=d => e=f"), "((a=b | c=d) => e=f)");
  EXPECT_EQ(shape("a=b => c=d => e=f"), "(a=b => (c=d => e=f))");
  EXPECT_EQ(shape("a=b <=> c=d => e=f"), "(a=b <=> (c=d => e=f))");
  EXPECT_EQ(shape("Ex x=y & y=z"), "(Ex (x=y & y=z))");
  EXPECT_EQ(shape("(Ex x=y) & y=z"), "((Ex x=y) & y=z)");
  EXPECT_EQ(shape("(x<y) <=> x=y"), "(x<y <=> x=y)");
}

TEST(Parse, Terms) {
  EXPECT_EQ(shape("TP[t][(i+n)-(j+1)]=@0"), "TP[t][((i+n)-(j+1))]=@0");
  EXPECT_EQ(shape("x=2*m+2*n"), "x=(2*m+2*n)");
  EXPECT_EQ(shape("p=x/27"), "p=x/27");
  EXPECT_EQ(shape("i+3*p<=x"), "(i+3*p)<=x");
  EXPECT_EQ(shape("y=m*4"), "y=4*m");
  EXPECT_EQ(shape("y=2*3"), "y=6");
  EXPECT_EQ(shape("(i+1)*2=j"), "2*(i+1)=j");
  EXPECT_EQ(shape("$cmp(i,j,9*x+1,t,u)"), "$cmp(i,j,(9*x+1),t,u)");
}

TEST(Parse, WordAtoms) {
  const ParsedFormula f = parse_formula("TP[t][i]!=TP[u][j]");
  EXPECT_EQ(f.root->kind, Formula::Kind::WordWord);
  EXPECT_EQ(f.root->op, CompareOp::Ne);
  EXPECT_EQ(f.root->left_word.indices.size(), 2u);
  const ParsedFormula g = parse_formula("TP[t][i]=@2");
  EXPECT_EQ(g.root->kind, Formula::Kind::WordConst);
  EXPECT_EQ(g.root->constant, 2);
}

TEST(Parse, ComparisonsInParentheses) {
  EXPECT_EQ(shape("(i+n)-(j+1)=k"), "((i+n)-(j+1))=k");
  EXPECT_EQ(shape("(n>=1) & (x<y)"), "(n>=1 & x<y)");
  EXPECT_EQ(shape("((x=y))"), "x=y");
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_formula("x*y=z"), ParseError);
  EXPECT_THROW(parse_formula("x/0=z"), ParseError);
  EXPECT_THROW(parse_formula("?msd_3 x=x"), ParseError);
  EXPECT_THROW(parse_formula("?lsd_1 x=x"), ParseError);
  EXPECT_THROW(parse_formula("x=="), ParseError);
  EXPECT_THROW(parse_formula("TP[t][i]<@1"), ParseError);
  EXPECT_THROW(parse_formula("TP=@1"), ParseError);
  EXPECT_THROW(parse_formula(""), ParseError);
  EXPECT_THROW(parse_formula("x=99999999999999999999999"), ParseError);
  EXPECT_EQ(error_column("x=y & & z=w"), 7u);
}

TEST(Parse, UnknownPredicateIsNotAParseError) {
  EXPECT_NO_THROW(parse_formula("Ex $nosuch(x)"));
}

TEST(Parse, PrintedFormReparses) {
  for (std::string_view text :
       {"?lsd_3 Et,i Aj (j<n) => TP[t][i+j]=TP[t][(i+n)-(j+1)]",
        "?lsd_3 At,x,p ($link(x,t) & p=x/27 & x>=81) => Ei i+3*p<=x & $boolean(i,3*p-1,t)",
        "Ex,y ~(x<y | x>y) <=> x=y"}) {
    const std::string once = shape(text);
    EXPECT_EQ(shape(once), once);
  }
}

TEST(CollectVars, InOrder) {
  std::vector<std::string> vars;
  collect_vars(*parse_formula("TP[t][(i+n)-(j+1)]=@0").root->left_word.indices[1], vars);
  EXPECT_EQ(vars, (std::vector<std::string>{"i", "n", "j"}));
}
