def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running verification")
    config.addinivalue_line("markers", "full: opt-in heavy runs (MACFORGE_FULL=1)")
