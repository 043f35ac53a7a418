# test_config.py
import io
import os
import unittest

from kavc_config import DEFAULT_MAX_WITNESS_LEN, CliConfig, SearchConfig


class TestSearchConfig(unittest.TestCase):
    """Search limits from arguments and environment"""

    def test_defaults(self):
        config = SearchConfig(env={})
        self.assertEqual(config.get_optimal_settings(),
                         {'max_len': DEFAULT_MAX_WITNESS_LEN, 'workers': 1, 'seed': 0, 'over': 'vprime'})

    def test_environment(self):
        env = {'KAVC_MAX_WITNESS_LEN': '5', 'KAVC_WORKERS': '3', 'KAVC_SEED': '42'}
        config = SearchConfig(env=env)
        self.assertEqual((config.max_len, config.workers, config.seed), (5, 3, 42))

    def test_arguments_win(self):
        env = {'KAVC_MAX_WITNESS_LEN': '5', 'KAVC_SEED': '42'}
        config = SearchConfig(max_len=2, seed=7, env=env)
        self.assertEqual((config.max_len, config.seed), (2, 7))

    def test_auto_workers(self):
        config = SearchConfig(workers='auto', env={})
        self.assertEqual(config.workers, min(4, os.cpu_count() or 1))

    def test_invalid_values(self):
        for kwargs in ({'max_len': -1}, {'workers': 0}, {'workers': 'many'}, {'seed': -3}, {'over': 'w'}):
            with self.assertRaises(ValueError, msg=str(kwargs)):
                SearchConfig(env={}, **kwargs)
        with self.assertRaises(ValueError):
            SearchConfig(env={'KAVC_MAX_WITNESS_LEN': 'eight'})

    def test_print_config_info(self):
        stream = io.StringIO()
        SearchConfig(max_len=3, env={}).print_config_info(stream)
        self.assertIn("🔧", stream.getvalue())
        self.assertIn("3", stream.getvalue())


class TestCliConfig(unittest.TestCase):
    """Command configuration"""

    def test_describe(self):
        config = CliConfig('decide', SearchConfig(env={}), json=True)
        settings = config.describe()
        self.assertEqual(settings['command'], 'decide')
        self.assertTrue(settings['json'])
        self.assertEqual(config.max_len, DEFAULT_MAX_WITNESS_LEN)

    def test_unknown_command(self):
        with self.assertRaises(ValueError):
            CliConfig('prove', SearchConfig(env={}))


if __name__ == '__main__':
    unittest.main()
