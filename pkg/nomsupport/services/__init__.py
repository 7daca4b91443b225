# Support calculus, counterexample and suite services
