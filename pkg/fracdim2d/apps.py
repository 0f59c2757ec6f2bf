import inspect
import logging
from importlib import import_module

from django.apps import AppConfig

from .settings import get_var

logger = logging.getLogger(__name__)


class Fracdim2dConfig(AppConfig):
    name = "fracdim2d"
    verbose_name = "Fractional integrals and fractal dimension"

    source_classes = None

    def ready(self):
        '''This is called by django when the project starts running.'''
        self.load_source_classes()

    @classmethod
    def get_source_class(cls, name):
        '''Returns the function source plug-in class registered
        under the given catalog name. None if not found.
        '''
        from django.apps import apps

        app = apps.get_app_config(cls.name)
        if app.source_classes is None:
            app.load_source_classes()
        return app.source_classes.get(name, None)

    @classmethod
    def get_source_classes(cls):
        '''Returns the registry: catalog name -> plug-in class.'''
        from django.apps import apps

        app = apps.get_app_config(cls.name)
        if app.source_classes is None:
            app.load_source_classes()
        return app.source_classes

    def load_source_classes(self):
        """
        Reset self.source_classes as a dictionary
        where name: <class>
        for each plug-in class found in the modules listed in
        settings.FRACDIM2D_SOURCES
        """
        ret = self.source_classes = {}

        module_paths = get_var("SOURCES")

        from .sources.base import SourceBase

        for path in module_paths:
            try:
                module = import_module(path)
            except ImportError:
                raise (
                    ImportError(
                        "{} not found (referenced from {} in your settings)".format(
                            path, "FRACDIM2D_SOURCES"
                        )
                    )
                )

            for name in dir(module):
                source_class = getattr(module, name)
                if (
                    inspect.isclass(source_class)
                    and issubclass(source_class, SourceBase)
                    and source_class.name != "base"
                    and source_class.__module__ == module.__name__
                ):
                    ret[source_class.name] = source_class

        logger.debug("loaded %d function sources", len(ret))

        return ret
