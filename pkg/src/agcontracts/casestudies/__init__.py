"""Contract constructors, fixtures and oracles for the worked case studies."""
