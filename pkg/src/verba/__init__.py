"""Free products of finite groups: words, trees, test words and verifiers."""
